#pragma once

#include <complex>
#include <cstdint>

namespace degdyn::num {

// Counter-based stream: output n is a pure function of (seed, stream index, n),
// so identical (seed, index) pairs replay identical draws and distinct indices
// give statistically independent streams. SplitMix64 finalizer as the PRF.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index) {
    key_ = mix(seed ^ mix(index + 0x632be59bd9b4e019ull));
  }

  std::uint64_t next_u64() {
    return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ull);
  }

  // 53-bit uniform in [0, 1).
  double uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased-enough integer draw via 128-bit multiply-high.
  std::uint64_t choice(std::uint64_t n) {
    return (std::uint64_t)(((unsigned __int128)next_u64() * n) >> 64);
  }

  std::complex<double> in_rectangle(double x0, double x1, double y0, double y1) {
    double re = uniform(x0, x1);
    double im = uniform(y0, y1);
    return {re, im};
  }

  std::complex<double> unit_disk() {
    for (;;) {
      double x = 2.0 * uniform() - 1.0;
      double y = 2.0 * uniform() - 1.0;
      if (x * x + y * y <= 1.0) return {x, y};
    }
  }

  std::complex<double> unit_circle() {
    double t = 6.283185307179586476925286766559 * uniform();
    return {std::cos(t), std::sin(t)};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t ctr_ = 0;
};

}  // namespace degdyn::num
