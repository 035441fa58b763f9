#pragma once

#include "hfinsler/randers.hpp"

namespace hfinsler {

/// References with 1 - <Z,w>^2 below this are central: C_W = 0 and the frame
/// is undefined.
inline constexpr double kCentralThreshold = 1e-12;
/// Between kCentralThreshold and this, frames are built but flagged.
inline constexpr double kNearCentralThreshold = 1e-6;

/// Berwald-Moor frame at a unit reference W: E1 = W / |W|_W, E2 the
/// g_W-normalized Cartan vector with <Z, E2> > 0, E3 = W x E2.
struct MoorFrame {
  Vector3 reference;
  Vector3 e1;
  Vector3 e2;
  Vector3 e3;
  /// w = |W|_W = 1 + <X0, W>.
  double w_scalar = 1.0;
  bool near_central = false;

  Basis3 basis() const { return {e1, e2, e3}; }
  const Vector3& operator[](int i) const { return i == 0 ? e1 : (i == 1 ? e2 : e3); }
};

bool is_central(const Vector3& unit_w) noexcept;
bool is_near_central(const Vector3& unit_w) noexcept;

/// Throws NotUnitReference, RiemannianCase (xi == 0) or CentralReference.
MoorFrame build_frame(const Vector3& w, const RandersParam& p);

struct FrameBrackets {
  Vector3 e3_e1;  // [E3, E1] = <E2, Z> Z
  Vector3 e2_e3;  // [E2, E3] = (<E2,E2><W,Z> + xi <Z,E2>^2) Z
};

/// Closed-form brackets of the frame vectors.
FrameBrackets frame_brackets(const MoorFrame& f, const RandersParam& p);

/// Frame scalars determined by (w, xi) alone.
struct FrameScalars {
  double z_e2_squared;  // <Z, E2>^2 = (xi^2 - (w-1)^2) / (xi^2 w^3)
  double e2_e2;         // <E2, E2> = (xi^2 + 2w - 1) / w^3
  double x0_e2;         // <X0, E2> = sqrt((xi^2 - (w-1)^2) / w^3)
};

FrameScalars frame_scalars(double w_scalar, const RandersParam& p);

/// C_W in the frame basis from the four closed frame components plus the
/// vanishing of every component with an E1 slot.
CartanTensor frame_cartan_components(const MoorFrame& f, const RandersParam& p);

}  // namespace hfinsler
