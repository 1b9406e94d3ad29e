#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stop_token>
#include <vector>

#include "randsudoku/errors.hpp"
#include "randsudoku/random_source.hpp"
#include "randsudoku/sigma_matrix.hpp"

namespace randsudoku {

/// Square integer matrix with no constraints beyond shape. Row-major,
/// 1-based accessors.
class Grid {
 public:
  explicit Grid(std::uint32_t m) : m_(m), cells_(static_cast<std::size_t>(m) * m, 0) {}
  Grid(std::uint32_t m, std::vector<std::uint32_t> cells);

  /// Throws InvalidArgument unless `rows` is square.
  static Grid from_rows(const std::vector<std::vector<std::uint32_t>>& rows);

  std::uint32_t size() const noexcept { return m_; }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const noexcept {
    return cells_[static_cast<std::size_t>(i - 1) * m_ + (j - 1)];
  }
  std::uint32_t& at(std::uint32_t i, std::uint32_t j) noexcept {
    return cells_[static_cast<std::size_t>(i - 1) * m_ + (j - 1)];
  }
  std::span<const std::uint32_t> cells() const noexcept { return cells_; }
  std::span<std::uint32_t> cells() noexcept { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;
  friend auto operator<=>(const Grid&, const Grid&) = default;

 private:
  std::uint32_t m_;
  std::vector<std::uint32_t> cells_;
};

/// True iff every row, column and n x n block of the n^2 x n^2 grid is a
/// permutation of {1..n^2}. Stops at the first failing group. Throws
/// InvalidArgument if the side is not a perfect square or an entry is out
/// of range.
bool is_sudoku(const Grid& g);

/// A grid that passed is_sudoku.
class SudokuMatrix {
 public:
  explicit SudokuMatrix(Grid g);
  static SudokuMatrix unchecked(std::uint32_t n, Grid g);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return n_ * n_; }
  std::uint32_t at(std::uint32_t i, std::uint32_t j) const noexcept { return grid_.at(i, j); }
  const Grid& grid() const noexcept { return grid_; }

  friend bool operator==(const SudokuMatrix&, const SudokuMatrix&) = default;
  friend auto operator<=>(const SudokuMatrix&, const SudokuMatrix&) = default;

 private:
  SudokuMatrix(std::uint32_t n, Grid g) : n_(n), grid_(std::move(g)) {}
  std::uint32_t n_;
  Grid grid_;
};

/// Pairwise-disjoint Sigma layers plus their union.
class DisjointStack {
 public:
  explicit DisjointStack(std::uint32_t n);

  std::uint32_t n() const noexcept { return n_; }
  std::size_t depth() const noexcept { return layers_.size(); }
  const std::vector<SigmaMatrix>& layers() const noexcept { return layers_; }
  const BinaryMatrix& occupancy() const noexcept { return occupancy_; }

  /// True iff `candidate` shares no 1 with any layer already on the stack.
  bool fits(const BinaryMatrix& candidate) const noexcept {
    return !occupancy_.intersects(candidate);
  }

  /// Pushes `layer` if it fits; returns whether it did.
  bool try_push(const SigmaMatrix& layer);
  void pop();
  void clear();

 private:
  std::uint32_t n_;
  std::vector<SigmaMatrix> layers_;
  BinaryMatrix occupancy_;
};

/// P = 1*A_1 + 2*A_2 + ... + n^2*A_{n^2}. Throws CompositionError naming
/// the first overlapping or uncovered cell, InvalidArgument on a wrong
/// layer count or mixed orders.
SudokuMatrix compose(std::span<const SigmaMatrix> layers);

/// Layer k has a 1 exactly where s holds k.
std::vector<SigmaMatrix> decompose(const SudokuMatrix& s);

/// What gen_sudoku does when a layer keeps getting rejected.
struct RestartPolicy {
  enum class Mode {
    kRestart,    // throw away every layer and start again from layer 1
    kBacktrack,  // drop only the previous layer and redo it
  };
  Mode mode = Mode::kRestart;
  /// Consecutive rejections at one layer before giving up on it.
  /// Unset means 10000 * n.
  std::optional<std::uint64_t> max_consecutive_rejections;
  /// Restarts (or backtracks) allowed before BudgetExhausted. Unset means
  /// unlimited.
  std::optional<std::uint64_t> max_restarts;

  std::uint64_t rejection_limit(std::uint32_t n) const {
    return max_consecutive_rejections.value_or(10000ull * n);
  }
};

/// Instrumentation for one gen_sudoku call. Field set is fixed per
/// kSchemaVersion; see stats_to_json().
struct SudokuStats {
  static constexpr int kSchemaVersion = 1;

  std::uint32_t n = 0;
  /// Rejected candidates per layer (index k-1), summed over restarts.
  std::vector<std::uint64_t> rejections;
  std::uint64_t restarts = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t candidates = 0;
  std::chrono::nanoseconds draw_time{0};   // building random Pi matrices
  std::chrono::nanoseconds map_time{0};    // phi
  std::chrono::nanoseconds check_time{0};  // disjointness test + accumulation
  std::chrono::nanoseconds wall_time{0};
};

class SudokuBudgetExhausted : public BudgetExhausted {
 public:
  SudokuBudgetExhausted(const std::string& what, SudokuStats stats)
      : BudgetExhausted(what), stats_(std::move(stats)) {}
  const SudokuStats& stats() const noexcept { return stats_; }

 private:
  SudokuStats stats_;
};

struct SudokuResult {
  SudokuMatrix matrix;
  SudokuStats stats;
};

/// Layered generator: for k = 1..n^2 draw random Pi matrices, map each with
/// phi, and keep the first one disjoint from the union of layers 1..k-1;
/// the accepted layer contributes value k. Dead ends are handled by
/// `policy`.
SudokuResult gen_sudoku(std::uint32_t n, RandomSource& source, const RestartPolicy& policy = {});

struct ParallelSudokuResult {
  SudokuResult result;
  std::uint32_t attempt;  // index of the winning attempt
  std::uint64_t seed;     // derive_seed(root_seed, attempt)
};

/// Runs `attempts` independent gen_sudoku calls on threads, attempt i seeded
/// with derive_seed(root_seed, i). The result is the successful attempt with
/// the lowest index; a success cancels only higher-indexed attempts, so the
/// output depends on (root_seed, attempts, policy) alone. If every attempt
/// exhausts its budget, attempt 0's error is rethrown.
ParallelSudokuResult gen_sudoku_parallel(std::uint32_t n, std::uint64_t root_seed,
                                         std::uint32_t attempts,
                                         const RestartPolicy& policy = {});

struct SudokuRejectionResult {
  SudokuMatrix matrix;
  std::uint64_t iterations;
};

/// Fills n^4 cells from {1..n^2} and accepts iff is_sudoku. n >= 3 throws
/// Infeasible.
SudokuRejectionResult gen_sudoku_rejection(
    std::uint32_t n, RandomSource& source,
    std::optional<std::uint64_t> max_iterations = std::nullopt);

/// Counts n^2 x n^2 Sudoku matrices by backtracking with row, column and
/// block pruning. If `visit` is set it receives each matrix once, in
/// lexicographic row-major order. n >= 3 throws Infeasible.
std::uint64_t enumerate_sudoku(std::uint32_t n,
                               const std::function<void(const SudokuMatrix&)>& visit = {});

namespace detail {
// is_sudoku over an in-range row-major buffer, reusing `scratch`
// (2*n^2 entries). No range validation.
bool is_sudoku_cells(std::uint32_t n, std::span<const std::uint32_t> cells,
                     std::span<std::uint32_t> scratch);

// gen_sudoku body. Returns nullopt if `stop` fires first.
std::optional<SudokuResult> gen_sudoku_impl(std::uint32_t n, RandomSource& source,
                                            const RestartPolicy& policy,
                                            std::stop_token stop);
}  // namespace detail

}  // namespace randsudoku
