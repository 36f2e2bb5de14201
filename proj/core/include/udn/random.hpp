#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace udn {

namespace detail {

/// splitmix64 finalizer. Pure integer arithmetic, identical on every
/// platform, which is what the seeding contract leans on.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace detail

/// Counter-derived random stream: the state is a pure function of
/// (master seed, experiment tag, stream index), never of how many draws
/// other streams made. Trial i can therefore run on any worker, in any
/// order, and still produce the same numbers.
///
/// Generator is xoshiro256++ keyed through splitmix64.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::string_view tag, std::uint64_t index) {
    std::uint64_t key = detail::mix64(master_seed);
    key = detail::mix64(key ^ detail::fnv1a64(tag));
    key = detail::mix64(key ^ index);
    for (auto& word : state_) {
      key = detail::mix64(key);
      word = key;
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Exponential with mean 1 (Rayleigh-faded power gain).
  double exponential() { return -std::log1p(-next_unit()); }

  /// Standard normal via Box-Muller; the pair's second value is cached.
  double normal();

  /// Exact Poisson draw. Inversion for small means; means above the
  /// inversion range are split into independent chunks (a sum of
  /// independent Poissons is Poisson), which avoids lgamma and stays
  /// exact for arbitrarily large means.
  std::uint64_t poisson(double mean);

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t poisson_inversion(double mean);

  std::array<std::uint64_t, 4> state_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Seeding contract for experiment runners: every trial stream is derived
/// from (master seed, experiment tag, trial index), so outputs are
/// independent of thread count and probe order.
struct SeedSchedule {
  std::uint64_t master_seed = 1;

  RandomStream stream(std::string_view tag, std::uint64_t index) const {
    return RandomStream(master_seed, tag, index);
  }
};

}  // namespace udn
