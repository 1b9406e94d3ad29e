#include "randsudoku/sudoku.hpp"

#include <exception>
#include <string>
#include <thread>

#include "randsudoku/perm.hpp"

namespace randsudoku {

namespace {

std::uint32_t order_of(std::uint32_t m) {
  const auto n = detail::block_order(m);
  if (!n) throw InvalidArgument("matrix side " + std::to_string(m) + " is not a perfect square");
  return *n;
}

using Clock = std::chrono::steady_clock;

}  // namespace

Grid::Grid(std::uint32_t m, std::vector<std::uint32_t> cells) : m_(m), cells_(std::move(cells)) {
  if (cells_.size() != static_cast<std::size_t>(m) * m) {
    throw InvalidArgument("grid of side " + std::to_string(m) + " needs " +
                          std::to_string(static_cast<std::size_t>(m) * m) + " cells");
  }
}

Grid Grid::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  const auto m = static_cast<std::uint32_t>(rows.size());
  if (m == 0) throw InvalidArgument("grid must have at least one row");
  std::vector<std::uint32_t> cells;
  cells.reserve(static_cast<std::size_t>(m) * m);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (rows[i].size() != m) {
      throw InvalidArgument("row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(m));
    }
    cells.insert(cells.end(), rows[i].begin(), rows[i].end());
  }
  return Grid(m, std::move(cells));
}

bool detail::is_sudoku_cells(std::uint32_t n, std::span<const std::uint32_t> cells,
                             std::span<std::uint32_t> scratch) {
  const std::uint32_t m = n * n;
  auto group = scratch.subspan(0, m);
  auto counts = scratch.subspan(m, m);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (!is_permutation_scratch(cells.subspan(static_cast<std::size_t>(i) * m, m), counts)) {
      return false;
    }
  }
  for (std::uint32_t j = 0; j < m; ++j) {
    for (std::uint32_t i = 0; i < m; ++i) group[i] = cells[static_cast<std::size_t>(i) * m + j];
    if (!is_permutation_scratch(group, counts)) return false;
  }
  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t t = 0; t < n; ++t) {
      std::uint32_t idx = 0;
      for (std::uint32_t k = 0; k < n; ++k) {
        for (std::uint32_t l = 0; l < n; ++l) {
          group[idx++] = cells[static_cast<std::size_t>(s * n + k) * m + (t * n + l)];
        }
      }
      if (!is_permutation_scratch(group, counts)) return false;
    }
  }
  return true;
}

bool is_sudoku(const Grid& g) {
  const std::uint32_t m = g.size();
  const std::uint32_t n = order_of(m);
  for (std::uint32_t i = 1; i <= m; ++i) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      const auto v = g.at(i, j);
      if (v < 1 || v > m) {
        throw InvalidArgument("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " +
                              std::to_string(v) + ", outside 1.." + std::to_string(m));
      }
    }
  }
  std::vector<std::uint32_t> scratch(2 * m, 0);
  return detail::is_sudoku_cells(n, g.cells(), scratch);
}

SudokuMatrix::SudokuMatrix(Grid g) : n_(0), grid_(std::move(g)) {
  if (!is_sudoku(grid_)) throw InvalidArgument("matrix is not a Sudoku matrix");
  n_ = order_of(grid_.size());
}

SudokuMatrix SudokuMatrix::unchecked(std::uint32_t n, Grid g) {
  assert(g.size() == n * n && is_sudoku(g));
  return SudokuMatrix(n, std::move(g));
}

DisjointStack::DisjointStack(std::uint32_t n) : n_(n), occupancy_(n * n) {
  layers_.reserve(static_cast<std::size_t>(n) * n);
}

bool DisjointStack::try_push(const SigmaMatrix& layer) {
  if (layer.n() != n_) throw InvalidArgument("layer order does not match the stack");
  if (!fits(layer.bits())) return false;
  occupancy_.merge(layer.bits());
  layers_.push_back(layer);
  assert(occupancy_.count() == layers_.size() * n_ * n_);
  return true;
}

void DisjointStack::pop() {
  assert(!layers_.empty());
  occupancy_.remove(layers_.back().bits());
  layers_.pop_back();
}

void DisjointStack::clear() {
  layers_.clear();
  occupancy_.clear();
}

SudokuMatrix compose(std::span<const SigmaMatrix> layers) {
  if (layers.empty()) throw InvalidArgument("compose: no layers");
  const std::uint32_t n = layers.front().n();
  const std::uint32_t m = n * n;
  if (layers.size() != m) {
    throw InvalidArgument("compose: need " + std::to_string(m) + " layers, got " +
                          std::to_string(layers.size()));
  }
  Grid g(m);
  for (std::uint32_t k = 1; k <= m; ++k) {
    const auto& layer = layers[k - 1];
    if (layer.n() != n) {
      throw InvalidArgument("compose: layer " + std::to_string(k) + " has order " +
                            std::to_string(layer.n()) + ", expected " + std::to_string(n));
    }
    for (const auto& [i, j] : layer.ones()) {
      if (g.at(i, j) != 0) {
        throw CompositionError("compose: layers " + std::to_string(g.at(i, j)) + " and " +
                                   std::to_string(k) + " overlap at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")",
                               i, j);
      }
      g.at(i, j) = k;
    }
  }
  for (std::uint32_t i = 1; i <= m; ++i) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      if (g.at(i, j) == 0) {
        throw CompositionError("compose: cell (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is not covered by any layer",
                               i, j);
      }
    }
  }
  return SudokuMatrix(std::move(g));
}

std::vector<SigmaMatrix> decompose(const SudokuMatrix& s) {
  const std::uint32_t n = s.n();
  const std::uint32_t m = n * n;
  std::vector<BinaryMatrix> bits(m, BinaryMatrix(m));
  for (std::uint32_t i = 1; i <= m; ++i) {
    for (std::uint32_t j = 1; j <= m; ++j) bits[s.at(i, j) - 1].set(i, j);
  }
  std::vector<SigmaMatrix> layers;
  layers.reserve(m);
  for (auto& b : bits) layers.push_back(SigmaMatrix(std::move(b)));
  return layers;
}

namespace {

#ifndef NDEBUG
// Literal form of the acceptance test: C = B + A has no entry above 1.
bool additive_fits(const BinaryMatrix& accumulated, const BinaryMatrix& candidate) {
  const std::uint32_t m = accumulated.size();
  for (std::uint32_t i = 1; i <= m; ++i) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      if (int{accumulated.get(i, j)} + int{candidate.get(i, j)} > 1) return false;
    }
  }
  return true;
}
#endif

}  // namespace

std::optional<SudokuResult> detail::gen_sudoku_impl(std::uint32_t n, RandomSource& source,
                                                    const RestartPolicy& policy,
                                                    std::stop_token stop) {
  if (n == 0) throw InvalidArgument("gen_sudoku: n must be at least 1");
  const auto started = Clock::now();
  const std::uint32_t m = n * n;
  const std::uint64_t limit = policy.rejection_limit(n);

  SudokuStats stats;
  stats.n = n;
  stats.rejections.assign(m, 0);

  DisjointStack stack(n);
  std::vector<std::uint32_t> pi_cells(2ull * n * n);
  std::vector<std::uint32_t> pool(n);
  const std::span<std::uint32_t> pi_view(pi_cells);
  BinaryMatrix candidate(m);

  auto give_up = [&](const char* what) {
    stats.wall_time = Clock::now() - started;
    throw SudokuBudgetExhausted(std::string("gen_sudoku: ") + what + " budget of " +
                                    std::to_string(*policy.max_restarts) + " exhausted at layer " +
                                    std::to_string(stack.depth() + 1),
                                stats);
  };

  while (stack.depth() < m) {
    const std::size_t layer = stack.depth();  // 0-based index of the layer being placed
    std::uint64_t consecutive = 0;
    for (;;) {
      if (stop.stop_requested()) return std::nullopt;
      const auto t0 = Clock::now();
      for (std::uint32_t row = 0; row < 2 * n; ++row) {
        select_and_delete(pi_view.subspan(static_cast<std::size_t>(row) * n, n),
                          std::span<std::uint32_t>(pool), source, DirectVariant::kShift);
      }
      const auto t1 = Clock::now();
      phi_into(n, pi_cells, candidate);
      const auto t2 = Clock::now();
      const bool fits = stack.fits(candidate);
      assert(fits == additive_fits(stack.occupancy(), candidate));
      if (fits) stack.try_push(SigmaMatrix::unchecked(n, candidate));
      const auto t3 = Clock::now();
      stats.draw_time += t1 - t0;
      stats.map_time += t2 - t1;
      stats.check_time += t3 - t2;
      ++stats.candidates;
      if (fits) break;

      ++stats.rejections[layer];
      if (++consecutive < limit) continue;

      if (policy.mode == RestartPolicy::Mode::kRestart) {
        if (policy.max_restarts && stats.restarts >= *policy.max_restarts) give_up("restart");
        ++stats.restarts;
        stack.clear();
      } else {
        if (policy.max_restarts && stats.backtracks >= *policy.max_restarts) give_up("backtrack");
        ++stats.backtracks;
        if (stack.depth() > 0) stack.pop();
      }
      break;
    }
  }

  Grid g(m);
  for (std::uint32_t k = 1; k <= m; ++k) {
    for (const auto& [i, j] : stack.layers()[k - 1].ones()) g.at(i, j) = k;
  }
  stats.wall_time = Clock::now() - started;
  return SudokuResult{SudokuMatrix::unchecked(n, std::move(g)), std::move(stats)};
}

SudokuResult gen_sudoku(std::uint32_t n, RandomSource& source, const RestartPolicy& policy) {
  return *detail::gen_sudoku_impl(n, source, policy, std::stop_token{});
}

ParallelSudokuResult gen_sudoku_parallel(std::uint32_t n, std::uint64_t root_seed,
                                         std::uint32_t attempts, const RestartPolicy& policy) {
  if (attempts == 0) throw InvalidArgument("gen_sudoku_parallel: attempts must be at least 1");
  if (n == 0) throw InvalidArgument("gen_sudoku: n must be at least 1");
  std::vector<std::optional<SudokuResult>> results(attempts);
  std::vector<std::exception_ptr> errors(attempts);
  std::vector<std::stop_source> stops(attempts);
  {
    std::vector<std::jthread> workers;
    workers.reserve(attempts);
    for (std::uint32_t i = 0; i < attempts; ++i) {
      workers.emplace_back([&, i] {
        try {
          RandomSource source(derive_seed(root_seed, i));
          results[i] = detail::gen_sudoku_impl(n, source, policy, stops[i].get_token());
          if (results[i]) {
            for (std::uint32_t j = i + 1; j < attempts; ++j) stops[j].request_stop();
          }
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (std::uint32_t i = 0; i < attempts; ++i) {
    if (results[i]) return {std::move(*results[i]), i, derive_seed(root_seed, i)};
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  throw BudgetExhausted("gen_sudoku_parallel: no attempt finished");
}

SudokuRejectionResult gen_sudoku_rejection(std::uint32_t n, RandomSource& source,
                                           std::optional<std::uint64_t> max_iterations) {
  if (n == 0) throw InvalidArgument("gen_sudoku_rejection: n must be at least 1");
  if (n >= 3) {
    throw Infeasible("gen_sudoku_rejection: n=" + std::to_string(n) +
                     " has acceptance probability sigma_n / (n^2)^(n^4) (about 3e-56 at n=3);"
                     " only n <= 2 is supported");
  }
  const std::uint32_t m = n * n;
  std::vector<std::uint32_t> cells(static_cast<std::size_t>(m) * m);
  std::vector<std::uint32_t> scratch(2 * m, 0);
  for (std::uint64_t it = 1;; ++it) {
    if (max_iterations && it > *max_iterations) {
      throw BudgetExhausted("gen_sudoku_rejection: no Sudoku matrix within " +
                            std::to_string(*max_iterations) + " iterations");
    }
    for (auto& c : cells) c = source.uniform_int(m);
    if (detail::is_sudoku_cells(n, cells, scratch)) {
      return {SudokuMatrix::unchecked(n, Grid(m, std::move(cells))), it};
    }
  }
}

std::uint64_t enumerate_sudoku(std::uint32_t n,
                               const std::function<void(const SudokuMatrix&)>& visit) {
  if (n == 0) throw InvalidArgument("enumerate_sudoku: n must be at least 1");
  if (n >= 3) {
    throw Infeasible("enumerate_sudoku: n=" + std::to_string(n) +
                     " is far beyond exhaustive enumeration; only n <= 2 is supported");
  }
  const std::uint32_t m = n * n;
  const std::uint32_t cells = m * m;
  // Bit v-1 set in a mask means value v is already used in that group.
  std::vector<std::uint32_t> row_used(m, 0), col_used(m, 0), block_used(m, 0);
  Grid g(m);
  std::uint64_t count = 0;

  std::function<void(std::uint32_t)> place = [&](std::uint32_t cell) {
    if (cell == cells) {
      ++count;
      if (visit) visit(SudokuMatrix::unchecked(n, g));
      return;
    }
    const std::uint32_t i = cell / m;
    const std::uint32_t j = cell % m;
    const std::uint32_t b = (i / n) * n + (j / n);
    const std::uint32_t used = row_used[i] | col_used[j] | block_used[b];
    for (std::uint32_t v = 1; v <= m; ++v) {
      const std::uint32_t bit = 1u << (v - 1);
      if (used & bit) continue;
      row_used[i] |= bit;
      col_used[j] |= bit;
      block_used[b] |= bit;
      g.at(i + 1, j + 1) = v;
      place(cell + 1);
      row_used[i] &= ~bit;
      col_used[j] &= ~bit;
      block_used[b] &= ~bit;
    }
    g.at(i + 1, j + 1) = 0;
  };
  place(0);
  return count;
}

}  // namespace randsudoku
