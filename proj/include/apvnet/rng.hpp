#pragma once

// Portable pseudo-random numbers. Every draw is defined in terms of 64-bit
// integer arithmetic so that shuffles, splits and weight initialization are
// bit-identical across compilers and platforms (the <random> distributions
// are implementation-defined and are not used).
//
// Generator: SplitMix64.
//   state  <- state + 0x9E3779B97F4A7C15            (mod 2^64)
//   z      <- state
//   z      <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z      <- (z ^ (z >> 27)) * 0x94D049BB133111EB
//   output <- z ^ (z >> 31)
// The initial state is the seed itself.
//
// Derived draws:
//   uniform01()       (next() >> 11) * 2^-53, in [0, 1)
//   uniform_below(n)  rejection sampling: reject outputs below (2^64 - n) mod n,
//                     return output mod n
//   normal()          Box-Muller on two uniform01 draws, first branch only
//   shuffle()         Fisher-Yates from the back: for i = n-1 .. 1,
//                     j = uniform_below(i + 1), swap(a[i], a[j])

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>

namespace apvnet {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive.
  constexpr std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  double normal(double mean = 0.0, double stddev = 1.0) noexcept {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

template <class T>
void fisher_yates_shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

// Derives an independent stream seed from a master seed and a stream tag.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  SplitMix64 g(master ^ (stream * 0xD1B54A32D192ED03ULL));
  return g.next();
}

}  // namespace apvnet
