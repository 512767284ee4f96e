#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

#include "cutcap/errors.hpp"

// Self-contained RNG stack (xoshiro256++ core, splitmix64 seeding/stream
// derivation, polar-method normals, inversion/PTRS Poisson). std::
// distributions are implementation-defined, which would break the
// byte-identical reproducibility contract across toolchains.
namespace cutcap {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Independent stream seed for a (master, stream-index) pair; nestable.
inline std::uint64_t seed_for(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (0xA0761D6478BD642Full * (stream + 1));
  return splitmix64_next(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64_next(s);
  }

  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t v, int k) {
      return (v << k) | (v >> (64 - k));
    };
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

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Marsaglia polar method; returns two independent standard normals.
  std::pair<double, double> normal_pair() {
    while (true) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        return {u * f, v * f};
      }
    }
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    auto [a, b] = normal_pair();
    spare_ = b;
    has_spare_ = true;
    return a;
  }

  // CN(0,1): E[|h|^2] = 1.
  std::complex<double> complex_normal() {
    auto [a, b] = normal_pair();
    return {a * kInvSqrt2, b * kInvSqrt2};
  }

  // Uniform on the unit circle without trigonometry.
  std::complex<double> unit_phase() {
    while (true) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return {(u * u - v * v) / s, 2.0 * u * v / s};
    }
  }

  std::uint64_t poisson(double mean) {
    if (!(mean >= 0.0)) throw validation_error("poisson mean must be >= 0");
    if (mean == 0.0) return 0;
    return mean < 30.0 ? poisson_inversion(mean) : poisson_ptrs(mean);
  }

 private:
  static constexpr double kInvSqrt2 = 0.70710678118654752440;

  std::uint64_t poisson_inversion(double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

  // Hoermann's PTRS transformed rejection, valid for mean >= ~10.
  std::uint64_t poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    while (true) {
      const double u = uniform() - 0.5;
      const double v = uniform();
      const double us = 0.5 - std::fabs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
      const double rhs = kf * loglam - mean - std::lgamma(kf + 1.0);
      if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
    }
  }

  std::array<std::uint64_t, 4> state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cutcap
