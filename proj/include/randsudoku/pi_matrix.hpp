#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "randsudoku/perm.hpp"
#include "randsudoku/random_source.hpp"

namespace randsudoku {

/// A (2n) x n matrix over {1..n} whose every row is a permutation.
///
/// Rows are 1-based. Rows 1..n pick the in-block row for each block of a
/// row of blocks; rows n+1..2n pick the in-block column for each block of a
/// column of blocks (see phi()). Storage is row-major and private.
class PiMatrix {
 public:
  /// Takes exactly 2n rows of a common order n.
  explicit PiMatrix(const std::vector<Permutation>& rows);

  /// Validating constructor from raw rows; throws InvalidArgument.
  static PiMatrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows);

  /// Wraps a row-major (2n*n) buffer already known to be valid.
  static PiMatrix unchecked(std::uint32_t n, std::vector<std::uint32_t> cells);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t rows() const noexcept { return 2 * n_; }

  /// Entry p_{row,col}, both 1-based.
  std::uint32_t at(std::uint32_t row, std::uint32_t col) const noexcept {
    return cells_[(row - 1) * n_ + (col - 1)];
  }

  std::span<const std::uint32_t> row(std::uint32_t row) const noexcept {
    return std::span<const std::uint32_t>(cells_).subspan((row - 1) * n_, n_);
  }

  std::span<const std::uint32_t> cells() const noexcept { return cells_; }

  friend bool operator==(const PiMatrix&, const PiMatrix&) = default;
  friend auto operator<=>(const PiMatrix&, const PiMatrix&) = default;

 private:
  PiMatrix() = default;
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> cells_;
};

/// True iff the row-major (2n) x n buffer has every row a permutation.
bool is_pi_matrix(std::uint32_t n, std::span<const std::uint32_t> cells);

struct PiRejectionResult {
  PiMatrix matrix;
  std::uint64_t iterations;
};

/// Fills all 2n^2 cells from {1..n} and accepts iff every row is a
/// permutation. Success probability (n!)^{2n} / n^{2n^2} per attempt.
PiRejectionResult gen_pi_rejection(std::uint32_t n, RandomSource& source,
                                   std::optional<std::uint64_t> max_iterations = std::nullopt);

/// One select-and-delete permutation per row; never rejects.
PiMatrix gen_pi_direct(std::uint32_t n, RandomSource& source,
                       DirectVariant variant = DirectVariant::kShift);

/// C and D are disjoint when no (s,t) has
/// <c_{s,t}, c_{n+t,s}> == <d_{s,t}, d_{n+t,s}>. O(n^2).
bool pi_disjoint(const PiMatrix& c, const PiMatrix& d);

}  // namespace randsudoku
