#include "hfinsler/connection.hpp"

#include <algorithm>
#include <cmath>

namespace hfinsler {
namespace {

double max_abs(const Vector3& v) { return v.cwiseAbs().maxCoeff(); }

void require_orthonormal(const Basis3& basis, const SymMetric3& g) {
  const Matrix3 m = g.in_basis(basis).matrix();
  if (!((m - Matrix3::Identity()).cwiseAbs().maxCoeff() <= kOrthonormalTolerance)) {
    throw GeometryError(ErrorCode::NotOrthonormalBasis,
                        "basis is not orthonormal for the osculating metric");
  }
}

double center_factor(const RandersParam& p, CenterSide side) {
  return side == CenterSide::Positive ? 1.0 + p.xi() : 1.0 - p.xi();
}

// f1..f4 depend on (w, xi) through closed expressions only.
FCoeffs closed_f1_to_f4(double w, const RandersParam& p) {
  const double xi = p.xi();
  const double dw = w - 1.0;
  const double gap = xi * xi - dw * dw;
  const double x0_e2 = frame_scalars(w, p).x0_e2;
  FCoeffs f;
  f.f1 = (1.0 / xi) * std::sqrt(gap / w) * (xi + dw / xi);
  f.f2 = 0.5 * w - ((xi * xi + dw) / w) * (1.0 + dw / (xi * xi));
  f.f3 = 0.5 * w;
  f.f4 = -f.f1 / w - f.f2 * x0_e2 + 0.75 * w * x0_e2;
  return f;
}

void require_off_center(double w, const RandersParam& p) {
  if (p.is_riemannian()) {
    throw GeometryError(ErrorCode::RiemannianCase, "f-coefficients need xi > 0");
  }
  const double dw = w - 1.0;
  if (!std::isfinite(w) || !(dw * dw < p.xi() * p.xi())) {
    throw GeometryError(ErrorCode::CentralReference, "w_scalar must satisfy (w-1)^2 < xi^2");
  }
}

}  // namespace

ConnectionTable::ConnectionTable(Basis3 basis) : basis_(std::move(basis)) {}

Vector3 ConnectionTable::row(int i, int j) const {
  return {(*this)(i, j, 0), (*this)(i, j, 1), (*this)(i, j, 2)};
}

void ConnectionTable::set_row(int i, int j, const Vector3& coords) {
  for (int k = 0; k < 3; ++k) (*this)(i, j, k) = coords[k];
}

Vector3 ConnectionTable::apply(const Vector3& u, const Vector3& v) const {
  const Vector3 a = basis_.coordinates(u);
  const Vector3 b = basis_.coordinates(v);
  Vector3 out = Vector3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out += a[i] * b[j] * row(i, j);
  return basis_.vector(out);
}

double koszul_part(const Vector3& x, const Vector3& y, const Vector3& z, const SymMetric3& g) {
  return g.inner(bracket(x, y), z) - g.inner(bracket(y, z), x) + g.inner(bracket(z, x), y);
}

ConnectionTable solve_chern_rund(const Vector3& w, const SymMetric3& g, const CartanTensor& c,
                                 const Basis3& basis) {
  require_orthonormal(basis, g);
  auto cartan = [&](const Vector3& u, const Vector3& v, const Vector3& x) {
    return c.evaluate(u, v, x);
  };

  // 1a: 2 nabla_W W = sum_i A(W, W, E_i) E_i.
  Vector3 nabla_ww = Vector3::Zero();
  for (int i = 0; i < 3; ++i) nabla_ww += 0.5 * koszul_part(w, w, basis[i], g) * basis[i];

  // 1b: 2 <nabla_S W, E_i> = A(S, W, E_i) - 2 C(nabla_W W, E_i, S).
  std::array<Vector3, 3> nabla_sw;
  for (int s = 0; s < 3; ++s) {
    nabla_sw[s] = Vector3::Zero();
    for (int i = 0; i < 3; ++i) {
      const double rhs = koszul_part(basis[s], w, basis[i], g) -
                         2.0 * cartan(nabla_ww, basis[i], basis[s]);
      nabla_sw[s] += 0.5 * rhs * basis[i];
    }
  }

  // 1c: 2 <nabla_S T, E_i> = A(S, T, E_i) - 2 C(nabla_S W, T, E_i)
  //                          - 2 C(nabla_T W, E_i, S) + 2 C(nabla_{E_i} W, S, T).
  ConnectionTable table(basis);
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t)
      for (int i = 0; i < 3; ++i) {
        const double rhs = koszul_part(basis[s], basis[t], basis[i], g) -
                           2.0 * cartan(nabla_sw[s], basis[t], basis[i]) -
                           2.0 * cartan(nabla_sw[t], basis[i], basis[s]) +
                           2.0 * cartan(nabla_sw[i], basis[s], basis[t]);
        table(s, t, i) = 0.5 * rhs;
      }
  return table;
}

ConnectionTable solve_chern_rund(const Vector3& w, const RandersParam& p, const Basis3& basis) {
  const SymMetric3 g = osculating_metric(w, p);
  require_orthonormal(basis, g);
  return solve_chern_rund(w, g, cartan_tensor(w, p).in_basis(basis), basis);
}

ConnectionTable solve_chern_rund(const MoorFrame& f, const RandersParam& p) {
  return solve_chern_rund(f.reference, osculating_metric(f.reference, p),
                          frame_cartan_components(f, p), f.basis());
}

FCoeffs f_coefficients(double w_scalar, const RandersParam& p) {
  require_off_center(w_scalar, p);
  const double xi = p.xi();
  const double dw = w_scalar - 1.0;
  const double z = dw / xi;
  const double horizontal = std::sqrt(xi * xi - dw * dw) / xi;
  const Vector3 reference = normalize_reference(Vector3{horizontal, 0.0, z});
  return f_coefficients(build_frame(reference, p), p);
}

FCoeffs f_coefficients(const MoorFrame& f, const RandersParam& p) {
  require_off_center(f.w_scalar, p);
  FCoeffs out = closed_f1_to_f4(f.w_scalar, p);
  const SymMetric3 g = osculating_metric(f.reference, p);
  const double x0_e2 = frame_scalars(f.w_scalar, p).x0_e2;
  out.f5 = g.inner(frame_brackets(f, p).e2_e3, f.e2) - 1.5 * out.f3 * x0_e2;
  return out;
}

ConnectionTable closed_frame_table(const MoorFrame& f, const RandersParam& p) {
  const FCoeffs c = f_coefficients(f, p);
  const double w = f.w_scalar;
  const double x0_e2 = p.xi() * f.e2[2];
  const Basis3 basis = f.basis();
  const FrameBrackets br = frame_brackets(f, p);

  ConnectionTable t(basis);
  t.set_row(0, 0, {0.0, 0.0, c.f1 / w});
  t.set_row(0, 1, {0.0, 0.0, c.f2 / w});
  t.set_row(1, 0, {0.0, 0.0, c.f2 / w});
  t.set_row(1, 1, {0.0, 0.0, c.f4});
  t.set_row(2, 0, {0.0, c.f3 / w, 0.0});
  t.set_row(0, 2, t.row(2, 0) - basis.coordinates(br.e3_e1));
  t.set_row(1, 2, {-c.f2 / w, c.f5, 0.0});
  t.set_row(2, 1, t.row(1, 2) - basis.coordinates(br.e2_e3));
  t.set_row(2, 2, {0.0, 0.0, -0.5 * c.f3 * x0_e2});
  return t;
}

ConnectionTable central_table(const RandersParam& p, CenterSide side) {
  const double half = 0.5 * center_factor(p, side);
  ConnectionTable t(Basis3::natural());
  t.set_row(0, 1, 0.5 * unit_z());
  t.set_row(1, 0, -0.5 * unit_z());
  t.set_row(2, 0, -half * unit_y());
  t.set_row(0, 2, -half * unit_y());
  t.set_row(2, 1, half * unit_x());
  t.set_row(1, 2, half * unit_x());
  return t;
}

Basis3 central_orthonormal_basis(const RandersParam& p, CenterSide side) {
  const double k = center_factor(p, side);
  const double s = std::sqrt(k);
  return {unit_x() / s, unit_y() / s, unit_z() / k};
}

Basis3 orthonormalize(const Basis3& seed, const SymMetric3& g) {
  std::array<Vector3, 3> e;
  for (int i = 0; i < 3; ++i) {
    Vector3 v = seed[i];
    for (int j = 0; j < i; ++j) v -= g.inner(v, e[j]) * e[j];
    e[i] = v / g.norm(v);
  }
  return {e[0], e[1], e[2]};
}

ConnectionTable change_basis(const ConnectionTable& t, const Basis3& to) {
  const Matrix3 m = t.basis().coordinates_matrix(to);
  const Matrix3 m_inv = to.coordinates_matrix(t.basis());
  ConnectionTable out(to);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Vector3 sum = Vector3::Zero();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sum += m(i, a) * m(j, b) * t.row(i, j);
      out.set_row(a, b, m_inv * sum);
    }
  return out;
}

std::array<Vector3, 3> reference_derivatives(const ConnectionTable& t, const Vector3& w) {
  const Basis3& b = t.basis();
  return {t.apply(b[0], w), t.apply(b[1], w), t.apply(b[2], w)};
}

double torsion_residual(const ConnectionTable& t) {
  const Basis3& b = t.basis();
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Vector3 lhs = b.vector(t.row(i, j) - t.row(j, i));
      worst = std::max(worst, max_abs(lhs - bracket(b[i], b[j])));
    }
  return worst;
}

double almost_metric_residual(const ConnectionTable& t, const Vector3& w, const RandersParam& p) {
  const SymMetric3 g = osculating_metric(w, p);
  const CartanTensor c = cartan_tensor(w, p);
  const Basis3& b = t.basis();
  const auto nabla_w = reference_derivatives(t, w);
  double worst = 0.0;
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      for (int x = 0; x < 3; ++x) {
        const double r = g.inner(b.vector(t.row(u, v)), b[x]) +
                         g.inner(b[v], b.vector(t.row(u, x))) +
                         2.0 * c.evaluate(nabla_w[u], b[v], b[x]);
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

TableDiscrepancy compare_tables(const ConnectionTable& a, const ConnectionTable& b) {
  const ConnectionTable bb = b.basis().approx_equal(a.basis(), 0.0) ? b : change_basis(b, a.basis());
  TableDiscrepancy d;
  d.max_abs = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double diff = std::abs(a(i, j, k) - bb(i, j, k));
        if (diff > d.max_abs || std::isnan(diff)) {
          d = {std::isnan(diff) ? INFINITY : diff, i, j, k, a(i, j, k), bb(i, j, k)};
        }
      }
  return d;
}

}  // namespace hfinsler
