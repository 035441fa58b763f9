#include "hfinsler/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace hfinsler::oracle {
namespace {

void require_nondegenerate(const Vector3& w) {
  if (!is_finite(w) || !(std::sqrt(inner(w, w)) >= kMinReferenceNorm)) {
    throw GeometryError(ErrorCode::DegenerateReference, "reference norm below 1e-8");
  }
}

double step_for(const Vector3& w, const FdConfig& cfg) {
  return cfg.step * std::max(1.0, std::sqrt(inner(w, w)));
}

double mixed_second(const Vector3& w, const Vector3& a, const Vector3& b,
                    const RandersParam& p, double h) {
  auto f = [&](double s, double t) { return fundamental_squared(w + s * a + t * b, p); };
  return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
}

double mixed_third(const Vector3& w, const Vector3& a, const Vector3& b, const Vector3& c,
                   const RandersParam& p, double h) {
  double sum = 0.0;
  for (int sa : {1, -1})
    for (int sb : {1, -1})
      for (int sc : {1, -1})
        sum += sa * sb * sc * fundamental_squared(w + h * (sa * a + sb * b + sc * c), p);
  return sum / (8.0 * h * h * h);
}

// One Richardson pass for an O(h^2) central difference.
template <typename Stencil>
double extrapolate(Stencil&& d, double h, bool richardson) {
  if (!richardson) return d(h);
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

}  // namespace

void FdConfig::validate() const {
  if (!(step > 0.0 && step < 1e-2)) {
    throw GeometryError(ErrorCode::InvalidParameter, "finite-difference step must lie in (0, 1e-2)");
  }
}

double fundamental_squared(const Vector3& v, const RandersParam& p) {
  const double vv = inner(v, v);
  const double vz = v[2];
  const double xi = p.xi();
  return vv + 2.0 * xi * std::sqrt(vv) * vz + xi * xi * vz * vz;
}

SymMetric3 metric_fd(const Vector3& w, const RandersParam& p, const FdConfig& cfg) {
  cfg.validate();
  require_nondegenerate(w);
  const double h = step_for(w, cfg);
  Matrix3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const Vector3 a = Vector3::Unit(i);
      const Vector3 b = Vector3::Unit(j);
      g(i, j) = 0.5 * extrapolate([&](double hh) { return mixed_second(w, a, b, p, hh); }, h,
                                  cfg.richardson);
      g(j, i) = g(i, j);
    }
  return SymMetric3(g);
}

CartanTensor cartan_fd(const Vector3& w, const RandersParam& p, const FdConfig& cfg) {
  cfg.validate();
  require_nondegenerate(w);
  const double h = step_for(w, cfg);
  CartanTensor::Full full{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Vector3 a = Vector3::Unit(i);
        const Vector3 b = Vector3::Unit(j);
        const Vector3 c = Vector3::Unit(k);
        full[static_cast<std::size_t>(i * 9 + j * 3 + k)] =
            0.25 * extrapolate([&](double hh) { return mixed_third(w, a, b, c, p, hh); }, h,
                               cfg.richardson);
      }
  return CartanTensor::symmetrized(full);
}

Vector3 cartan_vector_trace(const Vector3& w, const RandersParam& p, const Basis3& basis,
                            TraceSource source, const FdConfig& cfg) {
  require_nondegenerate(w);
  require_unit_reference(w);

  const bool fd = source == TraceSource::FiniteDifference;
  const SymMetric3 g = (fd ? metric_fd(w, p) : osculating_metric(w, p)).in_basis(basis);
  const CartanTensor c = (fd ? cartan_fd(w, p, cfg) : cartan_tensor(w, p)).in_basis(basis);

  const Matrix3 gm = g.matrix();
  const Matrix3 g_inv = g.inverse();
  const double condition = gm.cwiseAbs().colwise().sum().maxCoeff() *
                           g_inv.cwiseAbs().colwise().sum().maxCoeff();
  if (!(condition <= 1e12)) {
    throw GeometryError(ErrorCode::SingularMetric, "metric condition estimate exceeds 1e12");
  }

  Vector3 trace = Vector3::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trace[k] += g_inv(i, j) * c(k, i, j);
  return basis.vector(g_inv * trace);
}

}  // namespace hfinsler::oracle
