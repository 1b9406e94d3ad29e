#include "randsudoku/perm.hpp"

#include <string>

namespace randsudoku {

namespace {

void check_range(std::span<const std::uint32_t> values) {
  const auto n = values.size();
  if (n == 0) throw InvalidArgument("tuple must have at least one element");
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] < 1 || values[i] > n) {
      throw InvalidArgument("value " + std::to_string(values[i]) + " at position " +
                            std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
    }
  }
}

}  // namespace

Tuple::Tuple(std::vector<std::uint32_t> values) : values_(std::move(values)) {
  check_range(values_);
}

Permutation::Permutation(std::vector<std::uint32_t> values) : values_(std::move(values)) {
  if (!is_permutation(values_)) throw InvalidArgument("values are not a permutation");
}

Permutation Permutation::identity(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("permutation order must be at least 1");
  std::vector<std::uint32_t> v(n);
  for (std::uint32_t i = 0; i < n; ++i) v[i] = i + 1;
  return unchecked(std::move(v));
}

Permutation Permutation::unchecked(std::vector<std::uint32_t> values) {
  Permutation p;
  p.values_ = std::move(values);
  assert(is_permutation(p.values_));
  return p;
}

bool detail::is_permutation_scratch(std::span<const std::uint32_t> values,
                                    std::span<std::uint32_t> counts) {
  const auto n = values.size();
  std::size_t i = 0;
  bool ok = true;
  for (; i < n; ++i) {
    const auto a = values[i];
    if (a < 1 || a > n) {
      for (std::size_t j = 0; j < i; ++j) counts[values[j] - 1] = 0;
      throw InvalidArgument("value " + std::to_string(a) + " at position " +
                            std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
    }
    if (++counts[a - 1] > 1) {
      ok = false;
      ++i;
      break;
    }
  }
  for (std::size_t j = 0; j < i; ++j) counts[values[j] - 1] = 0;
  return ok;
}

bool is_permutation(std::span<const std::uint32_t> values) {
  if (values.empty()) throw InvalidArgument("tuple must have at least one element");
  std::vector<std::uint32_t> counts(values.size(), 0);
  return detail::is_permutation_scratch(values, counts);
}

bool is_permutation(const Tuple& t) { return is_permutation(t.values()); }

PermRejectionResult gen_perm_rejection(std::uint32_t n, RandomSource& source,
                                       std::optional<std::uint64_t> max_iterations) {
  if (n == 0) throw InvalidArgument("gen_perm_rejection: n must be at least 1");
  std::vector<std::uint32_t> candidate(n);
  std::vector<std::uint32_t> counts(n, 0);
  for (std::uint64_t it = 1;; ++it) {
    if (max_iterations && it > *max_iterations) {
      throw BudgetExhausted("gen_perm_rejection: no permutation within " +
                            std::to_string(*max_iterations) + " iterations");
    }
    draw_tuple(std::span<std::uint32_t>(candidate), source);
    if (detail::is_permutation_scratch(candidate, counts)) {
      return {Permutation::unchecked(std::move(candidate)), it};
    }
  }
}

}  // namespace randsudoku
