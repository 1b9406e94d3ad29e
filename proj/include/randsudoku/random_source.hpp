#pragma once

#include <array>
#include <concepts>
#include <cstdint>

namespace randsudoku {

/// Anything that can hand out uniform integers in {1..k}. The generators are
/// templated on this so tests can script the draw sequence.
template <class S>
concept UniformIntSource = requires(S& s, std::uint32_t k) {
  { s.uniform_int(k) } -> std::convertible_to<std::uint32_t>;
};

/// SplitMix64 finalizer. Used for seeding and for deriving child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the i-th independent worker under a root seed.
///
/// Rule: run SplitMix64 from state `root ^ 0x5851f42d4c957f2d`, skip `index`
/// outputs and return the next one. Distinct indices give distinct streams
/// and the mapping never depends on thread scheduling.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept;

/// A fresh seed from std::random_device, for runs where none was given.
std::uint64_t entropy_seed();

/// Seedable uniform integer source backed by xoshiro256** (256-bit state,
/// seeded through SplitMix64). Values are 1-based: uniform_int(k) is in
/// {1..k}. Bounded draws use Lemire's multiply-shift with rejection of the
/// biased low range, so every value has probability exactly 1/k.
///
/// Not thread-safe; give each thread its own source (see derive_seed).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform value in {1..k}. Throws InvalidArgument for k == 0.
  std::uint32_t uniform_int(std::uint32_t k);

  /// Uniform value in {0,1}; one draw of the two-element generator.
  std::uint32_t uniform_bit() { return uniform_int(2) - 1; }

  /// Raw 64-bit output of the underlying engine.
  std::uint64_t next_u64() noexcept;

  /// Number of uniform_int calls served so far.
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t draws_ = 0;
};

static_assert(UniformIntSource<RandomSource>);

}  // namespace randsudoku
