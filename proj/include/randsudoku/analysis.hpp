#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "randsudoku/random_source.hpp"

namespace randsudoku {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class GeneratorId {
  kPermRejection,
  kPermDirect,
  kPiRejection,
  kPiDirect,
  kSigmaRejection,
  kSudokuRejection,
};

std::string_view to_string(GeneratorId id);
/// Accepts the names printed by to_string ("perm-rejection", ...).
std::optional<GeneratorId> parse_generator(std::string_view name);
std::span<const GeneratorId> all_generators();

/// Number of n^2 x n^2 Sudoku matrices, known for n <= 3. Throws
/// UnknownSigma for n >= 4.
BigInt sudoku_count(std::uint32_t n);

/// The 22-digit count of 9x9 Sudoku grids.
inline const BigInt& sigma3() {
  static const BigInt value("6670903752021072936960");
  return value;
}

BigInt factorial(std::uint32_t n);

/// Exact single-attempt acceptance probability of a generator at order n.
///   perm-rejection    n! / n^n
///   pi-rejection      (n!)^{2n} / n^{2n^2}
///   sigma-rejection   (n!)^{2n} / 2^{n^4}
///   sudoku-rejection  sigma_n / (n^2)^{n^4}
///   perm-direct, pi-direct   1
Rational closed_form_p(GeneratorId id, std::uint32_t n);

/// Largest n at which the rejection loop of `id` is run by estimate_p.
/// nullopt means no cap.
std::optional<std::uint32_t> feasible_limit(GeneratorId id);

struct EvalReport {
  GeneratorId generator;
  std::uint32_t n;
  std::uint64_t samples;
  std::uint64_t accepted;
  Rational theoretical;
  std::uint64_t seed;
  std::chrono::duration<double, std::nano> mean_iteration_time{0};
  std::chrono::duration<double, std::nano> mean_check_time{0};

  double empirical() const { return static_cast<double>(accepted) / static_cast<double>(samples); }
  double theoretical_value() const { return theoretical.convert_to<double>(); }
  /// sqrt(p(1-p)/samples) with p the empirical rate.
  double std_error() const;
  /// sqrt(p(1-p)/samples) with p the closed-form rate.
  double theoretical_std_error() const;
  /// |empirical - theoretical| in units of theoretical_std_error(). Zero when
  /// both agree exactly, infinity when they differ and the error is zero.
  double z_score() const;
};

/// Runs the single-attempt body of `id` (draw m(n) values, one membership
/// check) `samples` times and counts acceptances. Throws InvalidArgument for
/// samples < 100 and Infeasible above feasible_limit(id).
EvalReport estimate_p(GeneratorId id, std::uint32_t n, std::uint64_t samples,
                      RandomSource& source);

/// Same estimate split over `workers` threads; shard i uses
/// derive_seed(root_seed, i) and gets samples/workers attempts (the first
/// samples%workers shards get one more). Counts and times are summed.
EvalReport estimate_p_sharded(GeneratorId id, std::uint32_t n, std::uint64_t samples,
                              std::uint64_t root_seed, std::uint32_t workers);

/// What bench_tau times. The generator targets time one iteration of the
/// generator's loop; the check targets time the membership test alone on a
/// valid input (full pass, no early exit).
enum class BenchTarget {
  kPermRejection,
  kPermDirect,
  kPermDirectSwap,
  kPiRejection,
  kPiDirect,
  kSigmaRejection,
  kSudokuRejection,
  kPermCheck,
  kSigmaCheck,
  kSudokuCheck,
};

std::string_view to_string(BenchTarget target);
std::optional<BenchTarget> parse_bench_target(std::string_view name);

struct BenchRow {
  std::uint32_t n;
  double median_ns;  // per iteration
  double mad_ns;     // median absolute deviation of the per-iteration times
  std::uint64_t batch;  // iterations per timed repetition
};

struct BenchTable {
  BenchTarget target;
  std::uint64_t seed;
  std::uint32_t repetitions;
  std::vector<BenchRow> rows;
  /// Least-squares slope of log(median) on log(n), with a 95% interval.
  double slope = 0;
  double slope_low = 0;
  double slope_high = 0;
};

struct BenchOptions {
  std::uint32_t repetitions = 30;
  std::uint32_t warmup = 3;
  /// Each repetition is batched up to at least this long.
  std::chrono::microseconds min_batch_time{200};
};

/// Median-of-repetitions timing for each n, then the log-log slope across
/// the n values. Needs at least two distinct n and repetitions >= 30.
BenchTable bench_tau(BenchTarget target, std::span<const std::uint32_t> ns, RandomSource& source,
                     const BenchOptions& options = {});

/// Least-squares slope of y on x with a two-sided 95% Student-t interval.
struct SlopeFit {
  double slope;
  double low;
  double high;
};
SlopeFit fit_slope(std::span<const double> x, std::span<const double> y);

/// Doubling sequence lo, 2lo, 4lo, ... up to and including hi.
std::vector<std::uint32_t> doubling_range(std::uint32_t lo, std::uint32_t hi);

}  // namespace randsudoku
