#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "randsudoku/errors.hpp"
#include "randsudoku/random_source.hpp"

namespace randsudoku {

/// A candidate n-tuple over {1..n}. Duplicates are allowed; out-of-range
/// values are not.
class Tuple {
 public:
  explicit Tuple(std::vector<std::uint32_t> values);

  std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(values_.size()); }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

 private:
  std::vector<std::uint32_t> values_;
};

/// A permutation of {1..n}, stored as the sequence <a_1, ..., a_n>.
class Permutation {
 public:
  /// Throws InvalidArgument unless `values` is a permutation of {1..n}.
  explicit Permutation(std::vector<std::uint32_t> values);

  static Permutation identity(std::uint32_t n);

  /// Wraps values the caller has already proven to be a permutation.
  static Permutation unchecked(std::vector<std::uint32_t> values);

  std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(values_.size()); }
  std::span<const std::uint32_t> values() const noexcept { return values_; }

  /// 1-based element access: at(i) == a_i.
  std::uint32_t at(std::size_t i) const { return values_.at(i - 1); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  Permutation() = default;
  std::vector<std::uint32_t> values_;
};

/// Single pass with a count array; stops at the first repeated value.
/// Throws InvalidArgument if a value lies outside {1..n}.
bool is_permutation(std::span<const std::uint32_t> values);
bool is_permutation(const Tuple& t);

namespace detail {
// Same check with a caller-owned count buffer of at least values.size()
// entries. The buffer is left zeroed on return.
bool is_permutation_scratch(std::span<const std::uint32_t> values,
                            std::span<std::uint32_t> counts);
}  // namespace detail

struct PermRejectionResult {
  Permutation perm;
  std::uint64_t iterations;
};

/// Draw n values from {1..n} into `out` (out.size() == n).
template <UniformIntSource Source>
void draw_tuple(std::span<std::uint32_t> out, Source& source) {
  const auto n = static_cast<std::uint32_t>(out.size());
  for (auto& v : out) v = source.uniform_int(n);
}

/// Rejection sampler: draw n values, keep them if they form a permutation,
/// otherwise start over. Success probability per attempt is n!/n^n.
/// `max_iterations` (if set) bounds the attempts; exceeding it throws
/// BudgetExhausted.
PermRejectionResult gen_perm_rejection(
    std::uint32_t n, RandomSource& source,
    std::optional<std::uint64_t> max_iterations = std::nullopt);

enum class DirectVariant {
  kShift,         // delete the chosen slot by shifting the tail left, O(n^2)
  kSwapWithLast,  // move the last live slot into the hole, O(n)
};

namespace detail {
// Fills `out` with a uniform permutation of {1..out.size()} using `pool` as
// the working array (same size). Exactly out.size() draws.
template <UniformIntSource Source>
void select_and_delete(std::span<std::uint32_t> out, std::span<std::uint32_t> pool,
                       Source& source, DirectVariant variant) {
  const auto n = static_cast<std::uint32_t>(out.size());
  for (std::uint32_t k = 0; k < n; ++k) pool[k] = k + 1;
  for (std::uint32_t k = 1; k <= n; ++k) {
    const std::uint32_t live = n - k + 1;
    const std::uint32_t x = source.uniform_int(live);
    assert(x >= 1 && x <= live);
    out[k - 1] = pool[x - 1];
    if (variant == DirectVariant::kShift) {
      for (std::uint32_t j = x; j <= n - k; ++j) pool[j - 1] = pool[j];
    } else {
      pool[x - 1] = pool[live - 1];
    }
  }
}
}  // namespace detail

/// Select-and-delete generator. Draw k (1-based) is uniform over the n-k+1
/// values still in the pool, so exactly n draws are used and nothing is
/// ever rejected.
template <UniformIntSource Source>
Permutation gen_perm_direct(std::uint32_t n, Source& source,
                            DirectVariant variant = DirectVariant::kShift) {
  if (n == 0) throw InvalidArgument("gen_perm_direct: n must be at least 1");
  std::vector<std::uint32_t> pool(n);
  std::vector<std::uint32_t> out(n);
  detail::select_and_delete(std::span<std::uint32_t>(out), std::span<std::uint32_t>(pool),
                            source, variant);
  return Permutation::unchecked(std::move(out));
}

}  // namespace randsudoku
