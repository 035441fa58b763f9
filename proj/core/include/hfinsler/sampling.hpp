#pragma once

#include <cstdint>
#include <random>

#include "hfinsler/frame.hpp"
#include "hfinsler/randers.hpp"

namespace hfinsler {

/// Seeded sampler for reproducible property checks. Uniform doubles are built
/// from raw mt19937_64 output so sequences do not depend on the standard
/// library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Vector3 cube() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  /// Uniform on the unit sphere (rejection in the cube).
  Vector3 direction() {
    for (;;) {
      const Vector3 v = cube();
      const double n2 = inner(v, v);
      if (n2 > 1e-4 && n2 <= 1.0) return normalize_reference(v);
    }
  }

  /// Unit reference with 1 - <Z,w>^2 >= band.
  Vector3 off_center_direction(double band = kNearCentralThreshold) {
    for (;;) {
      const Vector3 w = direction();
      if (horizontal_norm_squared(w) >= band) return w;
    }
  }

  RandersParam randers(double lo = 0.05, double hi = 0.95) { return RandersParam(uniform(lo, hi)); }

  /// Random basis with |det| comfortably away from zero.
  Basis3 basis() {
    for (;;) {
      const Vector3 a = cube();
      const Vector3 b = cube();
      const Vector3 c = cube();
      if (std::abs(inner(cross(a, b), c)) > 0.1) return {a, b, c};
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hfinsler
