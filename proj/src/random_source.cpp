#include "randsudoku/random_source.hpp"

#include <bit>
#include <random>

#include "randsudoku/errors.hpp"

namespace randsudoku {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
  std::uint64_t state = root ^ 0x5851f42d4c957f2dULL;
  state += index * 0x9e3779b97f4a7c15ULL;
  return splitmix64(state);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

RandomSource::RandomSource(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t RandomSource::next_u64() noexcept {
  const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = std::rotl(state_[3], 45);
  return result;
}

std::uint32_t RandomSource::uniform_int(std::uint32_t k) {
  if (k == 0) throw InvalidArgument("uniform_int: k must be at least 1");
  ++draws_;
  // Lemire: the high word of x*k is uniform once the low word clears the
  // threshold (2^32 - k) mod k.
  std::uint64_t m = (next_u64() >> 32) * k;
  auto low = static_cast<std::uint32_t>(m);
  if (low < k) {
    const std::uint32_t threshold = static_cast<std::uint32_t>(-k) % k;
    while (low < threshold) {
      m = (next_u64() >> 32) * k;
      low = static_cast<std::uint32_t>(m);
    }
  }
  return static_cast<std::uint32_t>(m >> 32) + 1;
}

}  // namespace randsudoku
