#pragma once

#include <cstddef>
#include <cstdint>

#include "majq/core.hpp"

namespace majq {

/// SplitMix64 (Steele, Lea, Flood 2014).
class splitmix64 {
public:
  explicit splitmix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next();
    while (v >= limit) {
      v = next();
    }
    return v % bound;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool bit() { return (next() >> 63) != 0; }

  bit_vector bits(std::size_t n) {
    bit_vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x.set(i, bit());
    }
    return x;
  }

private:
  std::uint64_t state_;
};

} // namespace majq
