#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "randsudoku/pi_matrix.hpp"
#include "randsudoku/random_source.hpp"

namespace randsudoku {

/// 1-based global coordinate (row, column) of a set bit.
using Position = std::pair<std::uint32_t, std::uint32_t>;

/// Square m x m binary matrix packed into 64-bit words, row-major over the
/// global index. Unvalidated: any bit pattern is allowed.
class BinaryMatrix {
 public:
  explicit BinaryMatrix(std::uint32_t m);

  /// Throws InvalidArgument unless `rows` is square with 0/1 entries.
  static BinaryMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows);

  std::uint32_t size() const noexcept { return m_; }

  bool get(std::uint32_t i, std::uint32_t j) const noexcept {
    const std::size_t bit = static_cast<std::size_t>(i - 1) * m_ + (j - 1);
    return (words_[bit >> 6] >> (bit & 63)) & 1u;
  }

  void set(std::uint32_t i, std::uint32_t j, bool value = true) noexcept {
    const std::size_t bit = static_cast<std::size_t>(i - 1) * m_ + (j - 1);
    const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
    if (value) {
      words_[bit >> 6] |= mask;
    } else {
      words_[bit >> 6] &= ~mask;
    }
  }

  void clear() noexcept;
  std::size_t count() const noexcept;

  /// Word-wise AND test: true iff some position is set in both.
  bool intersects(const BinaryMatrix& other) const noexcept;
  /// this |= other
  void merge(const BinaryMatrix& other) noexcept;
  /// this &= ~other
  void remove(const BinaryMatrix& other) noexcept;

  /// Set positions sorted by row, then column.
  std::vector<Position> ones() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;
  friend auto operator<=>(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::uint32_t m_;
  std::vector<std::uint64_t> words_;
};

/// Permutation checks on rows and columns with early exit, then per-block
/// sums. O(n^4) for an n^2 x n^2 input. Throws InvalidArgument if the side
/// is not a perfect square.
bool is_sigma(const BinaryMatrix& b);

/// n^2 x n^2 permutation matrix with exactly one 1 in each n x n block.
/// Global row (s-1)n+k, column (t-1)n+l is position (k,l) of block A_{st}.
class SigmaMatrix {
 public:
  /// Throws InvalidArgument unless is_sigma(bits).
  explicit SigmaMatrix(BinaryMatrix bits);

  /// Build from a list of 1-based positions; validated.
  static SigmaMatrix from_ones(std::uint32_t n, std::span<const Position> ones);

  static SigmaMatrix unchecked(std::uint32_t n, BinaryMatrix bits);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t size() const noexcept { return n_ * n_; }
  const BinaryMatrix& bits() const noexcept { return bits_; }

  bool get(std::uint32_t i, std::uint32_t j) const noexcept { return bits_.get(i, j); }

  /// Entry (k,l) of block A_{st}; all indices 1-based in {1..n}.
  bool block_get(std::uint32_t s, std::uint32_t t, std::uint32_t k,
                 std::uint32_t l) const noexcept {
    return bits_.get((s - 1) * n_ + k, (t - 1) * n_ + l);
  }

  std::vector<Position> ones() const { return bits_.ones(); }

  friend bool operator==(const SigmaMatrix&, const SigmaMatrix&) = default;
  friend auto operator<=>(const SigmaMatrix&, const SigmaMatrix&) = default;

 private:
  SigmaMatrix(std::uint32_t n, BinaryMatrix bits) : n_(n), bits_(std::move(bits)) {}
  std::uint32_t n_;
  BinaryMatrix bits_;
};

/// Block A_{st} gets its single 1 at (p_{s,t}, p_{n+t,s}).
SigmaMatrix phi(const PiMatrix& p);

/// Reads each block's 1 back into p_{s,t} and p_{n+t,s}.
PiMatrix phi_inverse(const SigmaMatrix& a);
/// Validating overload; throws InvalidArgument if !is_sigma(b).
PiMatrix phi_inverse(const BinaryMatrix& b);

/// True iff no position is 1 in both. Throws InvalidArgument on order mismatch.
bool sigma_disjoint(const SigmaMatrix& a, const SigmaMatrix& b);

struct SigmaRejectionResult {
  SigmaMatrix matrix;
  std::uint64_t iterations;
};

/// Fills n^4 uniform bits and accepts iff is_sigma. Only n in {1,2} is
/// allowed; larger n throws Infeasible with the expected iteration count.
SigmaRejectionResult gen_sigma_rejection(
    std::uint32_t n, RandomSource& source,
    std::optional<std::uint64_t> max_iterations = std::nullopt);

namespace detail {
// phi() over a raw row-major Pi buffer into a preallocated n^2 x n^2 matrix.
void phi_into(std::uint32_t n, std::span<const std::uint32_t> pi_cells, BinaryMatrix& out);
// Side n of an n^2 x n^2 matrix, or nullopt if m is not a perfect square.
std::optional<std::uint32_t> block_order(std::uint32_t m);
}  // namespace detail

}  // namespace randsudoku
