// vislip/rng.hpp
//
// Seeded random source with hand-rolled draws. std::shuffle and the
// std distributions are implementation-defined, which would break the
// byte-identical-artifact contract across toolchains; everything that
// consumes randomness in this library goes through this class.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vislip/common.hpp"

namespace vislip {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint32_t uniform_u32(std::uint32_t n) {
    if (n == 0) throw InputError("uniform_u32: n must be positive");
    const std::uint64_t m = (0 - std::uint64_t(n)) % n;  // 2^64 mod n
    std::uint64_t r = next_u64();
    if (m != 0) {
      const std::uint64_t limit = 0 - m;  // largest multiple of n
      while (r >= limit) r = next_u64();
    }
    return static_cast<std::uint32_t>(r % n);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = uniform_u32(static_cast<std::uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace vislip
