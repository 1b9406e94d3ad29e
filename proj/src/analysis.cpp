#include "randsudoku/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "randsudoku/errors.hpp"
#include "randsudoku/perm.hpp"
#include "randsudoku/pi_matrix.hpp"
#include "randsudoku/sigma_matrix.hpp"
#include "randsudoku/sudoku.hpp"

namespace randsudoku {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::array kGenerators = {
    GeneratorId::kPermRejection, GeneratorId::kPermDirect,      GeneratorId::kPiRejection,
    GeneratorId::kPiDirect,      GeneratorId::kSigmaRejection, GeneratorId::kSudokuRejection,
};

constexpr std::array kBenchTargets = {
    BenchTarget::kPermRejection,  BenchTarget::kPermDirect,      BenchTarget::kPermDirectSwap,
    BenchTarget::kPiRejection,    BenchTarget::kPiDirect,        BenchTarget::kSigmaRejection,
    BenchTarget::kSudokuRejection, BenchTarget::kPermCheck,      BenchTarget::kSigmaCheck,
    BenchTarget::kSudokuCheck,
};

BigInt power(std::uint32_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

// One iteration of a generator's loop, with the draw and check phases
// timed separately. Buffers are allocated once per estimate.
class AttemptBody {
 public:
  AttemptBody(GeneratorId id, std::uint32_t n)
      : id_(id), n_(n), m_(n * n), pool_(n), counts_(std::max(2 * n * n, n), 0), bits_(n * n) {
    switch (id_) {
      case GeneratorId::kPermRejection:
      case GeneratorId::kPermDirect:
        cells_.resize(n);
        break;
      case GeneratorId::kPiRejection:
      case GeneratorId::kPiDirect:
        cells_.resize(2ull * n * n);
        break;
      case GeneratorId::kSigmaRejection:
        break;
      case GeneratorId::kSudokuRejection:
        cells_.resize(static_cast<std::size_t>(m_) * m_);
        break;
    }
  }

  bool run(RandomSource& source, Clock::duration& draw, Clock::duration& check) {
    const auto t0 = Clock::now();
    this->draw(source);
    const auto t1 = Clock::now();
    const bool ok = this->check();
    const auto t2 = Clock::now();
    draw += t1 - t0;
    check += t2 - t1;
    return ok;
  }

 private:
  void draw(RandomSource& source) {
    const std::span<std::uint32_t> cells(cells_);
    switch (id_) {
      case GeneratorId::kPermRejection:
      case GeneratorId::kPiRejection:
        for (auto& c : cells_) c = source.uniform_int(n_);
        break;
      case GeneratorId::kPermDirect:
        detail::select_and_delete(cells, std::span<std::uint32_t>(pool_), source,
                                  DirectVariant::kShift);
        break;
      case GeneratorId::kPiDirect:
        for (std::uint32_t r = 0; r < 2 * n_; ++r) {
          detail::select_and_delete(cells.subspan(static_cast<std::size_t>(r) * n_, n_),
                                    std::span<std::uint32_t>(pool_), source,
                                    DirectVariant::kShift);
        }
        break;
      case GeneratorId::kSigmaRejection:
        for (std::uint32_t i = 1; i <= m_; ++i) {
          for (std::uint32_t j = 1; j <= m_; ++j) bits_.set(i, j, source.uniform_bit() == 1);
        }
        break;
      case GeneratorId::kSudokuRejection:
        for (auto& c : cells_) c = source.uniform_int(m_);
        break;
    }
  }

  bool check() {
    const std::span<const std::uint32_t> cells(cells_);
    switch (id_) {
      case GeneratorId::kPermRejection:
      case GeneratorId::kPermDirect:
        return detail::is_permutation_scratch(cells, counts_);
      case GeneratorId::kPiRejection:
      case GeneratorId::kPiDirect:
        for (std::uint32_t r = 0; r < 2 * n_; ++r) {
          if (!detail::is_permutation_scratch(cells.subspan(static_cast<std::size_t>(r) * n_, n_),
                                              counts_)) {
            return false;
          }
        }
        return true;
      case GeneratorId::kSigmaRejection:
        return is_sigma(bits_);
      case GeneratorId::kSudokuRejection:
        return detail::is_sudoku_cells(n_, cells, counts_);
    }
    return false;
  }

  GeneratorId id_;
  std::uint32_t n_;
  std::uint32_t m_;
  std::vector<std::uint32_t> cells_;
  std::vector<std::uint32_t> pool_;
  std::vector<std::uint32_t> counts_;
  BinaryMatrix bits_;
};

void check_estimate_args(GeneratorId id, std::uint32_t n, std::uint64_t samples) {
  if (n == 0) throw InvalidArgument("n must be at least 1");
  if (samples < 100) throw InvalidArgument("estimate_p needs at least 100 samples");
  if (const auto limit = feasible_limit(id); limit && n > *limit) {
    std::ostringstream msg;
    msg << to_string(id) << " at n=" << n << " is infeasible: ";
    if (id == GeneratorId::kSudokuRejection && n > 3) {
      msg << "the number of Sudoku matrices is unknown for this order";
    } else {
      const Rational p = closed_form_p(id, n);
      msg << "acceptance probability " << boost::multiprecision::numerator(p) << "/"
          << boost::multiprecision::denominator(p) << ", about "
          << static_cast<double>(boost::multiprecision::denominator(p).convert_to<long double>() /
                                 boost::multiprecision::numerator(p).convert_to<long double>())
          << " attempts per success";
    }
    throw Infeasible(msg.str());
  }
}

double median(std::vector<double> v) {
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lo + hi) / 2;
}

// A canonical n^2 x n^2 Sudoku: cell (i,j) = ((i mod n) n + i div n + j) mod n^2 + 1.
std::vector<std::uint32_t> pattern_sudoku(std::uint32_t n) {
  const std::uint32_t m = n * n;
  std::vector<std::uint32_t> cells(static_cast<std::size_t>(m) * m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      cells[static_cast<std::size_t>(i) * m + j] = ((i % n) * n + i / n + j) % m + 1;
    }
  }
  return cells;
}

// A callable running one iteration of `target` at order n.
std::function<void()> make_iteration(BenchTarget target, std::uint32_t n, RandomSource& source,
                                     std::uint64_t& sink) {
  switch (target) {
    case BenchTarget::kPermRejection:
    case BenchTarget::kPiRejection:
    case BenchTarget::kSigmaRejection:
    case BenchTarget::kSudokuRejection: {
      const GeneratorId id = target == BenchTarget::kPermRejection ? GeneratorId::kPermRejection
                             : target == BenchTarget::kPiRejection ? GeneratorId::kPiRejection
                             : target == BenchTarget::kSigmaRejection
                                 ? GeneratorId::kSigmaRejection
                                 : GeneratorId::kSudokuRejection;
      auto body = std::make_shared<AttemptBody>(id, n);
      return [body, &source, &sink] {
        Clock::duration a{}, b{};
        sink += body->run(source, a, b);
      };
    }
    case BenchTarget::kPermDirect:
      return [n, &source, &sink] { sink += gen_perm_direct(n, source).at(1); };
    case BenchTarget::kPermDirectSwap:
      return [n, &source, &sink] {
        sink += gen_perm_direct(n, source, DirectVariant::kSwapWithLast).at(1);
      };
    case BenchTarget::kPiDirect:
      return [n, &source, &sink] { sink += gen_pi_direct(n, source).at(1, 1); };
    case BenchTarget::kPermCheck: {
      auto perm = std::make_shared<Permutation>(gen_perm_direct(n, source));
      return [perm, &sink] { sink += is_permutation(perm->values()); };
    }
    case BenchTarget::kSigmaCheck: {
      auto sigma = std::make_shared<SigmaMatrix>(phi(gen_pi_direct(n, source)));
      return [sigma, &sink] { sink += is_sigma(sigma->bits()); };
    }
    case BenchTarget::kSudokuCheck: {
      const std::uint32_t m = n * n;
      auto grid = std::make_shared<Grid>(m, pattern_sudoku(n));
      return [grid, &sink] { sink += is_sudoku(*grid); };
    }
  }
  throw InvalidArgument("unknown bench target");
}

}  // namespace

std::string_view to_string(GeneratorId id) {
  switch (id) {
    case GeneratorId::kPermRejection: return "perm-rejection";
    case GeneratorId::kPermDirect: return "perm-direct";
    case GeneratorId::kPiRejection: return "pi-rejection";
    case GeneratorId::kPiDirect: return "pi-direct";
    case GeneratorId::kSigmaRejection: return "sigma-rejection";
    case GeneratorId::kSudokuRejection: return "sudoku-rejection";
  }
  return "?";
}

std::optional<GeneratorId> parse_generator(std::string_view name) {
  for (auto id : kGenerators) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

std::span<const GeneratorId> all_generators() { return kGenerators; }

std::string_view to_string(BenchTarget target) {
  switch (target) {
    case BenchTarget::kPermRejection: return "perm-rejection";
    case BenchTarget::kPermDirect: return "perm-direct";
    case BenchTarget::kPermDirectSwap: return "perm-direct-swap";
    case BenchTarget::kPiRejection: return "pi-rejection";
    case BenchTarget::kPiDirect: return "pi-direct";
    case BenchTarget::kSigmaRejection: return "sigma-rejection";
    case BenchTarget::kSudokuRejection: return "sudoku-rejection";
    case BenchTarget::kPermCheck: return "perm-check";
    case BenchTarget::kSigmaCheck: return "sigma-check";
    case BenchTarget::kSudokuCheck: return "sudoku-check";
  }
  return "?";
}

std::optional<BenchTarget> parse_bench_target(std::string_view name) {
  for (auto t : kBenchTargets) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

BigInt factorial(std::uint32_t n) {
  BigInt f = 1;
  for (std::uint32_t k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt sudoku_count(std::uint32_t n) {
  switch (n) {
    case 1: return 1;
    case 2: return 288;
    case 3: return sigma3();
    default:
      throw UnknownSigma("no known count of Sudoku matrices for n=" + std::to_string(n));
  }
}

Rational closed_form_p(GeneratorId id, std::uint32_t n) {
  if (n == 0) throw InvalidArgument("n must be at least 1");
  const std::uint64_t nn = n;
  switch (id) {
    case GeneratorId::kPermDirect:
    case GeneratorId::kPiDirect:
      return Rational(1);
    case GeneratorId::kPermRejection:
      return Rational(factorial(n), power(n, nn));
    case GeneratorId::kPiRejection:
      return Rational(boost::multiprecision::pow(factorial(n), 2 * n), power(n, 2 * nn * nn));
    case GeneratorId::kSigmaRejection:
      return Rational(boost::multiprecision::pow(factorial(n), 2 * n), power(2, nn * nn * nn * nn));
    case GeneratorId::kSudokuRejection:
      // n^4 cells, each one of n^2 values.
      return Rational(sudoku_count(n), power(n * n, nn * nn * nn * nn));
  }
  throw InvalidArgument("unknown generator");
}

std::optional<std::uint32_t> feasible_limit(GeneratorId id) {
  switch (id) {
    case GeneratorId::kSigmaRejection:
    case GeneratorId::kSudokuRejection:
      return 2;
    default:
      return std::nullopt;
  }
}

double EvalReport::std_error() const {
  const double p = empirical();
  return std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

double EvalReport::theoretical_std_error() const {
  const double p = theoretical_value();
  return std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

double EvalReport::z_score() const {
  const double diff = std::abs(empirical() - theoretical_value());
  const double se = theoretical_std_error();
  if (se == 0) return diff == 0 ? 0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

EvalReport estimate_p(GeneratorId id, std::uint32_t n, std::uint64_t samples,
                      RandomSource& source) {
  check_estimate_args(id, n, samples);
  AttemptBody body(id, n);
  Clock::duration draw{}, check{};
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < samples; ++i) accepted += body.run(source, draw, check);

  EvalReport r{id, n, samples, accepted, closed_form_p(id, n), source.seed()};
  const double count = static_cast<double>(samples);
  r.mean_iteration_time =
      std::chrono::duration<double, std::nano>(draw + check) / count;
  r.mean_check_time = std::chrono::duration<double, std::nano>(check) / count;
  return r;
}

EvalReport estimate_p_sharded(GeneratorId id, std::uint32_t n, std::uint64_t samples,
                              std::uint64_t root_seed, std::uint32_t workers) {
  check_estimate_args(id, n, samples);
  if (workers == 0) throw InvalidArgument("workers must be at least 1");
  std::vector<std::uint64_t> accepted(workers, 0);
  std::vector<Clock::duration> draw(workers), check(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    for (std::uint32_t w = 0; w < workers; ++w) {
      const std::uint64_t share = samples / workers + (w < samples % workers ? 1 : 0);
      threads.emplace_back([&, w, share] {
        try {
          RandomSource source(derive_seed(root_seed, w));
          AttemptBody body(id, n);
          for (std::uint64_t i = 0; i < share; ++i) {
            accepted[w] += body.run(source, draw[w], check[w]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  EvalReport r{id, n, samples, std::accumulate(accepted.begin(), accepted.end(), std::uint64_t{0}),
               closed_form_p(id, n), root_seed};
  const auto total_draw = std::accumulate(draw.begin(), draw.end(), Clock::duration{});
  const auto total_check = std::accumulate(check.begin(), check.end(), Clock::duration{});
  const double count = static_cast<double>(samples);
  r.mean_iteration_time =
      std::chrono::duration<double, std::nano>(total_draw + total_check) / count;
  r.mean_check_time = std::chrono::duration<double, std::nano>(total_check) / count;
  return r;
}

SlopeFit fit_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t k = x.size();
  if (k < 2 || y.size() != k) throw InvalidArgument("fit_slope needs at least two points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(k);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(k);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("fit_slope needs at least two distinct x values");
  const double slope = sxy / sxx;
  if (k == 2) return {slope, slope, slope};
  double sse = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double e = y[i] - (my + slope * (x[i] - mx));
    sse += e * e;
  }
  const double se = std::sqrt(sse / static_cast<double>(k - 2) / sxx);
  const boost::math::students_t dist(static_cast<double>(k - 2));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return {slope, slope - t * se, slope + t * se};
}

std::vector<std::uint32_t> doubling_range(std::uint32_t lo, std::uint32_t hi) {
  if (lo == 0 || hi < lo) throw InvalidArgument("doubling range needs 1 <= lo <= hi");
  std::vector<std::uint32_t> ns;
  for (std::uint64_t n = lo; n <= hi; n *= 2) ns.push_back(static_cast<std::uint32_t>(n));
  return ns;
}

BenchTable bench_tau(BenchTarget target, std::span<const std::uint32_t> ns, RandomSource& source,
                     const BenchOptions& options) {
  if (options.repetitions < 30) throw InvalidArgument("bench_tau needs at least 30 repetitions");
  if (ns.size() < 2) throw InvalidArgument("bench_tau needs at least two values of n");
  for (auto n : ns) {
    if (n == 0) throw InvalidArgument("n must be at least 1");
  }

  BenchTable table{target, source.seed(), options.repetitions, {}};
  std::uint64_t sink = 0;
  for (const auto n : ns) {
    auto iteration = make_iteration(target, n, source, sink);

    // Grow the batch until one repetition takes at least min_batch_time.
    std::uint64_t batch = 1;
    for (;;) {
      const auto t0 = Clock::now();
      for (std::uint64_t b = 0; b < batch; ++b) iteration();
      if (Clock::now() - t0 >= options.min_batch_time || batch >= (1ull << 30)) break;
      batch *= 2;
    }
    for (std::uint32_t w = 0; w < options.warmup; ++w) {
      for (std::uint64_t b = 0; b < batch; ++b) iteration();
    }

    std::vector<double> per_iteration;
    per_iteration.reserve(options.repetitions);
    for (std::uint32_t r = 0; r < options.repetitions; ++r) {
      const auto t0 = Clock::now();
      for (std::uint64_t b = 0; b < batch; ++b) iteration();
      const std::chrono::duration<double, std::nano> elapsed = Clock::now() - t0;
      per_iteration.push_back(elapsed.count() / static_cast<double>(batch));
    }
    const double med = median(per_iteration);
    std::vector<double> deviations;
    deviations.reserve(per_iteration.size());
    for (double v : per_iteration) deviations.push_back(std::abs(v - med));
    table.rows.push_back({n, med, median(std::move(deviations)), batch});
  }
  // Keeps the timed calls from being optimized away.
  if (sink == std::numeric_limits<std::uint64_t>::max()) table.seed ^= 1;

  std::vector<double> lx, ly;
  for (const auto& row : table.rows) {
    lx.push_back(std::log(static_cast<double>(row.n)));
    ly.push_back(std::log(row.median_ns));
  }
  const auto fit = fit_slope(lx, ly);
  table.slope = fit.slope;
  table.slope_low = fit.low;
  table.slope_high = fit.high;
  return table;
}

}  // namespace randsudoku
