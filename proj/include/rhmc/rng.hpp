#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rhmc/types.hpp"

namespace rhmc {

/// Seedable generator used by every chain. Uniform deviates come from the
/// top 53 bits of a mt19937_64 draw and normals from Box-Muller, so a seed
/// fully determines the stream independent of the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal deviate (Box-Muller, pairs cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  Vector normal_vector(Index n) {
    Vector z(n);
    for (Index i = 0; i < n; ++i) z[i] = normal();
    return z;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rhmc
