#include "randsudoku/sigma_matrix.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <string>

namespace randsudoku {

BinaryMatrix::BinaryMatrix(std::uint32_t m)
    : m_(m), words_((static_cast<std::size_t>(m) * m + 63) / 64, 0) {
  if (m == 0) throw InvalidArgument("binary matrix side must be at least 1");
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows) {
  const auto m = static_cast<std::uint32_t>(rows.size());
  BinaryMatrix b(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (rows[i].size() != m) {
      throw InvalidArgument("row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(m));
    }
    for (std::uint32_t j = 0; j < m; ++j) {
      const auto v = rows[i][j];
      if (v > 1) {
        throw InvalidArgument("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") is " + std::to_string(v) + ", expected 0 or 1");
      }
      if (v == 1) b.set(i + 1, j + 1);
    }
  }
  return b;
}

void BinaryMatrix::clear() noexcept {
  for (auto& w : words_) w = 0;
}

std::size_t BinaryMatrix::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BinaryMatrix::intersects(const BinaryMatrix& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

void BinaryMatrix::merge(const BinaryMatrix& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
}

void BinaryMatrix::remove(const BinaryMatrix& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
}

std::vector<Position> BinaryMatrix::ones() const {
  std::vector<Position> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t word = words_[w]; word != 0; word &= word - 1) {
      const std::size_t bit = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
      out.emplace_back(static_cast<std::uint32_t>(bit / m_) + 1,
                       static_cast<std::uint32_t>(bit % m_) + 1);
    }
  }
  return out;
}

std::optional<std::uint32_t> detail::block_order(std::uint32_t m) {
  std::uint32_t n = 1;
  while (n * n < m) ++n;
  if (n * n != m) return std::nullopt;
  return n;
}

bool is_sigma(const BinaryMatrix& b) {
  const std::uint32_t m = b.size();
  const auto order = detail::block_order(m);
  if (!order) {
    throw InvalidArgument("matrix side " + std::to_string(m) + " is not a perfect square");
  }
  const std::uint32_t n = *order;

  // Row i and column i in one sweep.
  for (std::uint32_t i = 1; i <= m; ++i) {
    std::uint32_t r = 0;
    std::uint32_t c = 0;
    for (std::uint32_t j = 1; j <= m; ++j) {
      r += b.get(i, j);
      if (r > 1) return false;
      c += b.get(j, i);
      if (c > 1) return false;
    }
    if (r == 0 || c == 0) return false;
  }

  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t t = 0; t < n; ++t) {
      std::uint32_t x = 0;
      for (std::uint32_t i = 1; i <= n; ++i) {
        for (std::uint32_t j = 1; j <= n; ++j) x += b.get(s * n + i, t * n + j);
      }
      if (x != 1) return false;
    }
  }
  return true;
}

SigmaMatrix::SigmaMatrix(BinaryMatrix bits) : n_(0), bits_(std::move(bits)) {
  if (!is_sigma(bits_)) throw InvalidArgument("matrix is not a block permutation matrix");
  n_ = *detail::block_order(bits_.size());
}

SigmaMatrix SigmaMatrix::from_ones(std::uint32_t n, std::span<const Position> ones) {
  if (n == 0) throw InvalidArgument("order must be at least 1");
  const std::uint32_t m = n * n;
  BinaryMatrix b(m);
  for (const auto& [i, j] : ones) {
    if (i < 1 || i > m || j < 1 || j > m) {
      throw InvalidArgument("position (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is outside 1.." + std::to_string(m));
    }
    if (b.get(i, j)) {
      throw InvalidArgument("position (" + std::to_string(i) + "," + std::to_string(j) +
                            ") listed twice");
    }
    b.set(i, j);
  }
  return SigmaMatrix(std::move(b));
}

SigmaMatrix SigmaMatrix::unchecked(std::uint32_t n, BinaryMatrix bits) {
  assert(bits.size() == n * n && is_sigma(bits));
  return SigmaMatrix(n, std::move(bits));
}

void detail::phi_into(std::uint32_t n, std::span<const std::uint32_t> pi_cells,
                      BinaryMatrix& out) {
  out.clear();
  for (std::uint32_t s = 1; s <= n; ++s) {
    for (std::uint32_t t = 1; t <= n; ++t) {
      const std::uint32_t k = pi_cells[(s - 1) * n + (t - 1)];
      const std::uint32_t l = pi_cells[(n + t - 1) * n + (s - 1)];
      out.set((s - 1) * n + k, (t - 1) * n + l);
    }
  }
}

SigmaMatrix phi(const PiMatrix& p) {
  BinaryMatrix bits(p.n() * p.n());
  detail::phi_into(p.n(), p.cells(), bits);
  return SigmaMatrix::unchecked(p.n(), std::move(bits));
}

PiMatrix phi_inverse(const SigmaMatrix& a) {
  const std::uint32_t n = a.n();
  std::vector<std::vector<std::uint32_t>> rows(2 * n, std::vector<std::uint32_t>(n, 0));
  for (std::uint32_t s = 1; s <= n; ++s) {
    for (std::uint32_t t = 1; t <= n; ++t) {
      for (std::uint32_t k = 1; k <= n; ++k) {
        for (std::uint32_t l = 1; l <= n; ++l) {
          if (a.block_get(s, t, k, l)) {
            rows[s - 1][t - 1] = k;
            rows[n + t - 1][s - 1] = l;
          }
        }
      }
    }
  }
  return PiMatrix::from_rows(rows);
}

PiMatrix phi_inverse(const BinaryMatrix& b) { return phi_inverse(SigmaMatrix(b)); }

bool sigma_disjoint(const SigmaMatrix& a, const SigmaMatrix& b) {
  if (a.n() != b.n()) {
    throw InvalidArgument("sigma_disjoint: orders differ (" + std::to_string(a.n()) + " vs " +
                          std::to_string(b.n()) + ")");
  }
  return !a.bits().intersects(b.bits());
}

SigmaRejectionResult gen_sigma_rejection(std::uint32_t n, RandomSource& source,
                                         std::optional<std::uint64_t> max_iterations) {
  if (n == 0) throw InvalidArgument("gen_sigma_rejection: n must be at least 1");
  if (n >= 3) {
    // 2^{n^4} / (n!)^{2n}, in log10.
    const double n4 = std::pow(static_cast<double>(n), 4);
    const double log_expected =
        n4 * std::log10(2.0) - 2.0 * n * std::lgamma(n + 1.0) / std::log(10.0);
    std::ostringstream msg;
    msg.precision(4);
    msg << "gen_sigma_rejection: n=" << n << " needs about 10^" << log_expected
        << " iterations on average; only n <= 2 is supported";
    throw Infeasible(msg.str());
  }
  const std::uint32_t m = n * n;
  BinaryMatrix bits(m);
  for (std::uint64_t it = 1;; ++it) {
    if (max_iterations && it > *max_iterations) {
      throw BudgetExhausted("gen_sigma_rejection: no Sigma matrix within " +
                            std::to_string(*max_iterations) + " iterations");
    }
    for (std::uint32_t i = 1; i <= m; ++i) {
      for (std::uint32_t j = 1; j <= m; ++j) bits.set(i, j, source.uniform_bit() == 1);
    }
    if (is_sigma(bits)) return {SigmaMatrix::unchecked(n, std::move(bits)), it};
  }
}

}  // namespace randsudoku
