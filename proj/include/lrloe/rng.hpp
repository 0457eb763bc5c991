// Seedable, portable random number generator: xoshiro256++ with splitmix64
// seeding and a Box-Muller Gaussian. Self-contained so that simulated
// trajectories and training runs are bit-reproducible across builds of this
// project, independent of the standard library's distribution internals.

#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace lrloe {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
    have_cached_ = false;
    cached_ = 0.0;
  }

  // Independent stream derived from a master seed and a stream index.
  static Rng derive(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t sm = master;
    const std::uint64_t a = splitmix64(sm);
    sm = stream ^ 0x6a09e667f3bcc909ULL;
    const std::uint64_t b = splitmix64(sm);
    return Rng(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (pairs cached).
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  Eigen::Vector3d gaussian3(double stddev) {
    return {stddev * gaussian(), stddev * gaussian(), stddev * gaussian()};
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t s_[4];
  bool have_cached_;
  double cached_;
};

}  // namespace lrloe
