#pragma once

// Counter-based random numbers. Every draw is a pure function of
// (master seed, stream key...), so a simulation can be replayed or evaluated in
// any order and still produce the same result.

#include <cstdint>
#include <initializer_list>

namespace rumor {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }

  // Derives an independent generator for a sub-stream (trial, worker, ...).
  constexpr CounterRng derive(std::uint64_t key) const noexcept {
    return CounterRng(splitmix64(seed_ ^ splitmix64(key + 0x632be59bd9b4e019ULL)));
  }

  // Raw 64-bit word for the counter tuple (a, b, c).
  constexpr std::uint64_t bits(std::uint64_t a, std::uint64_t b = 0,
                               std::uint64_t c = 0) const noexcept {
    std::uint64_t h = splitmix64(seed_ ^ 0x2545f4914f6cdd1dULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ (b * 0xd6e8feb86659fd93ULL));
    h = splitmix64(h ^ (c * 0xa0761d6478bd642fULL));
    return h;
  }

  // Uniform integer in [0, bound) for the counter tuple (a, b, c); bound >= 1.
  // Lemire's multiply-shift with rejection; retries walk an extra counter so
  // the result stays a pure function of the tuple.
  constexpr std::uint64_t uniform_below(std::uint64_t bound, std::uint64_t a,
                                        std::uint64_t b = 0,
                                        std::uint64_t c = 0) const noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (std::uint64_t attempt = 0;; ++attempt) {
      std::uint64_t x = attempt == 0 ? bits(a, b, c) : splitmix64(bits(a, b, c) + attempt);
      unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold)
        return static_cast<std::uint64_t>(m >> 64);
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform01(std::uint64_t a, std::uint64_t b = 0,
                             std::uint64_t c = 0) const noexcept {
    return static_cast<double>(bits(a, b, c) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

// Sequential adaptor for code that wants a stream (generators, shuffles).
// Satisfies UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  explicit CounterStream(CounterRng rng) noexcept : rng_(rng) {}
  explicit CounterStream(std::uint64_t seed) noexcept : rng_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept { return rng_.bits(counter_++); }

  std::uint64_t below(std::uint64_t bound) noexcept {
    return rng_.uniform_below(bound, counter_++);
  }

  double unit() noexcept { return rng_.uniform01(counter_++); }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace rumor
