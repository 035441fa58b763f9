#include "hfinsler/frame.hpp"

#include <cmath>

namespace hfinsler {

bool is_central(const Vector3& unit_w) noexcept {
  return horizontal_norm_squared(unit_w) < kCentralThreshold;
}

bool is_near_central(const Vector3& unit_w) noexcept {
  return horizontal_norm_squared(unit_w) < kNearCentralThreshold;
}

MoorFrame build_frame(const Vector3& w, const RandersParam& p) {
  require_unit_reference(w);
  if (p.is_riemannian()) {
    throw GeometryError(ErrorCode::RiemannianCase, "the Berwald-Moor frame needs xi > 0");
  }
  if (is_central(w)) {
    throw GeometryError(ErrorCode::CentralReference,
                        "reference lies in the center; the Cartan vector vanishes");
  }

  const SymMetric3 g = osculating_metric(w, p);
  MoorFrame f;
  f.reference = w;
  f.w_scalar = 1.0 + p.xi() * w[2];
  f.near_central = is_near_central(w);
  f.e1 = w / g.norm(w);

  const Vector3 c = cartan_vector(w, p);
  f.e2 = c / g.norm(c);
  if (f.e2[2] < 0.0) f.e2 = -f.e2;
  f.e3 = cross(w, f.e2);
  return f;
}

FrameBrackets frame_brackets(const MoorFrame& f, const RandersParam& p) {
  const double z_e2 = f.e2[2];
  const double e2_e2 = inner(f.e2, f.e2);
  const double w_z = f.reference[2];
  return {z_e2 * unit_z(), (e2_e2 * w_z + p.xi() * z_e2 * z_e2) * unit_z()};
}

FrameScalars frame_scalars(double w_scalar, const RandersParam& p) {
  const double xi = p.xi();
  const double dw = w_scalar - 1.0;
  const double w3 = w_scalar * w_scalar * w_scalar;
  const double gap = xi * xi - dw * dw;
  return {gap / (xi * xi * w3), (xi * xi + 2.0 * w_scalar - 1.0) / w3, std::sqrt(gap / w3)};
}

CartanTensor frame_cartan_components(const MoorFrame& f, const RandersParam& p) {
  const double x0_e2 = p.xi() * f.e2[2];
  CartanTensor c(f.basis());
  c.set(1, 1, 1, 1.5 * x0_e2);
  c.set(1, 1, 2, 0.0);
  c.set(2, 2, 2, 0.0);
  c.set(2, 2, 1, 0.5 * x0_e2);
  return c;
}

}  // namespace hfinsler
