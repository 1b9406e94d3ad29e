#include "randsudoku/pi_matrix.hpp"

#include <string>

namespace randsudoku {

PiMatrix::PiMatrix(const std::vector<Permutation>& rows) {
  if (rows.empty() || rows.size() % 2 != 0) {
    throw InvalidArgument("a Pi matrix needs an even, nonzero number of rows");
  }
  n_ = static_cast<std::uint32_t>(rows.size() / 2);
  cells_.reserve(rows.size() * n_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n() != n_) {
      throw InvalidArgument("row " + std::to_string(i + 1) + " has order " +
                            std::to_string(rows[i].n()) + ", expected " + std::to_string(n_));
    }
    cells_.insert(cells_.end(), rows[i].values().begin(), rows[i].values().end());
  }
}

PiMatrix PiMatrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  if (rows.empty() || rows.size() % 2 != 0) {
    throw InvalidArgument("a Pi matrix needs an even, nonzero number of rows");
  }
  const auto n = static_cast<std::uint32_t>(rows.size() / 2);
  std::vector<std::uint32_t> cells;
  cells.reserve(rows.size() * n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw InvalidArgument("row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    if (!is_permutation(rows[i])) {
      throw InvalidArgument("row " + std::to_string(i + 1) + " is not a permutation");
    }
    cells.insert(cells.end(), rows[i].begin(), rows[i].end());
  }
  return unchecked(n, std::move(cells));
}

PiMatrix PiMatrix::unchecked(std::uint32_t n, std::vector<std::uint32_t> cells) {
  PiMatrix p;
  p.n_ = n;
  p.cells_ = std::move(cells);
  assert(is_pi_matrix(p.n_, p.cells_));
  return p;
}

bool is_pi_matrix(std::uint32_t n, std::span<const std::uint32_t> cells) {
  if (n == 0 || cells.size() != 2ull * n * n) return false;
  std::vector<std::uint32_t> counts(n, 0);
  for (std::uint32_t r = 0; r < 2 * n; ++r) {
    if (!detail::is_permutation_scratch(cells.subspan(r * n, n), counts)) return false;
  }
  return true;
}

PiRejectionResult gen_pi_rejection(std::uint32_t n, RandomSource& source,
                                   std::optional<std::uint64_t> max_iterations) {
  if (n == 0) throw InvalidArgument("gen_pi_rejection: n must be at least 1");
  std::vector<std::uint32_t> cells(2ull * n * n);
  std::vector<std::uint32_t> counts(n, 0);
  const std::span<std::uint32_t> view(cells);
  for (std::uint64_t it = 1;; ++it) {
    if (max_iterations && it > *max_iterations) {
      throw BudgetExhausted("gen_pi_rejection: no Pi matrix within " +
                            std::to_string(*max_iterations) + " iterations");
    }
    for (auto& c : cells) c = source.uniform_int(n);
    bool ok = true;
    for (std::uint32_t r = 0; r < 2 * n && ok; ++r) {
      ok = detail::is_permutation_scratch(view.subspan(r * n, n), counts);
    }
    if (ok) return {PiMatrix::unchecked(n, std::move(cells)), it};
  }
}

PiMatrix gen_pi_direct(std::uint32_t n, RandomSource& source, DirectVariant variant) {
  if (n == 0) throw InvalidArgument("gen_pi_direct: n must be at least 1");
  std::vector<Permutation> rows;
  rows.reserve(2 * n);
  for (std::uint32_t k = 0; k < 2 * n; ++k) rows.push_back(gen_perm_direct(n, source, variant));
  return PiMatrix(rows);
}

bool pi_disjoint(const PiMatrix& c, const PiMatrix& d) {
  if (c.n() != d.n()) {
    throw InvalidArgument("pi_disjoint: orders differ (" + std::to_string(c.n()) + " vs " +
                          std::to_string(d.n()) + ")");
  }
  const auto n = c.n();
  for (std::uint32_t s = 1; s <= n; ++s) {
    for (std::uint32_t t = 1; t <= n; ++t) {
      if (c.at(s, t) == d.at(s, t) && c.at(n + t, s) == d.at(n + t, s)) return false;
    }
  }
  return true;
}

}  // namespace randsudoku
