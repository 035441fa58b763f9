#include "hfinsler/randers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace hfinsler {
namespace {

constexpr int sym2_index(int i, int j) {
  if (i > j) std::swap(i, j);
  return i * (5 - i) / 2 + j;
}

constexpr int sym3_index(int i, int j, int k) {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
  // Packed order: 000 001 002 011 012 022 111 112 122 222.
  constexpr int offset[3] = {0, 6, 9};
  switch (i) {
    case 0: return sym2_index(j, k);
    case 1: return offset[1] + (j - 1) + (k - 1);
    default: return offset[2];
  }
}

// One term of the cyclic sum in the closed Cartan form.
double cartan_term(const Vector3& u, const Vector3& v, const Vector3& x,
                   const Vector3& w, const Vector3& drift) {
  const double a = inner(drift, w);
  const double wu = inner(w, u);
  const double wv = inner(w, v);
  const double wx = inner(w, x);
  return a * wu * wv * wx - a * inner(x, v) * wu - inner(drift, x) * wv * wu +
         inner(drift, u) * inner(x, v);
}

double cartan_closed(const Vector3& u, const Vector3& v, const Vector3& x,
                     const Vector3& w, const Vector3& drift) {
  return 0.5 * (cartan_term(u, v, x, w, drift) + cartan_term(v, x, u, w, drift) +
                cartan_term(x, u, v, w, drift));
}

}  // namespace

RandersParam::RandersParam(double xi) : xi_(xi) {
  if (!std::isfinite(xi) || xi < 0.0 || xi >= 1.0) {
    throw GeometryError(ErrorCode::InvalidParameter, "xi must lie in [0, 1)");
  }
}

// SymMetric3

SymMetric3::SymMetric3(const Matrix3& components, Basis3 basis)
    : basis_(std::move(basis)) {
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) upper_[sym2_index(i, j)] = components(i, j);
}

double SymMetric3::operator()(int i, int j) const { return upper_[sym2_index(i, j)]; }

Matrix3 SymMetric3::matrix() const {
  Matrix3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double SymMetric3::inner(const Vector3& u, const Vector3& v) const {
  const Vector3 a = basis_.coordinates(u);
  const Vector3 b = basis_.coordinates(v);
  return a.dot(matrix() * b);
}

double SymMetric3::norm(const Vector3& u) const { return std::sqrt(inner(u, u)); }

SymMetric3 SymMetric3::in_basis(const Basis3& target) const {
  // Components of the target vectors in our basis.
  const Matrix3 m = basis_.coordinates_matrix(target);
  return SymMetric3(m.transpose() * matrix() * m, target);
}

Matrix3 SymMetric3::inverse() const {
  const Matrix3 m = matrix();
  const double det = m.determinant();
  if (!(std::abs(det) >= kMinDeterminant)) {
    throw GeometryError(ErrorCode::SingularMetric, "metric determinant below 1e-14");
  }
  return m.inverse();
}

Vector3 SymMetric3::solve(const Vector3& rhs) const { return inverse() * rhs; }

bool SymMetric3::is_positive_definite() const {
  const Matrix3 m = matrix();
  return m(0, 0) > 0.0 && m.topLeftCorner<2, 2>().determinant() > 0.0 &&
         m.determinant() > 0.0;
}

double SymMetric3::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix3> solver(matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// CartanTensor

CartanTensor::CartanTensor(Basis3 basis) : basis_(std::move(basis)) {}

CartanTensor CartanTensor::symmetrized(const Full& full, Basis3 basis) {
  CartanTensor t(std::move(basis));
  auto at = [&](int i, int j, int k) { return full[static_cast<std::size_t>(i * 9 + j * 3 + k)]; };
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k) {
        const double sum = at(i, j, k) + at(i, k, j) + at(j, i, k) + at(j, k, i) +
                           at(k, i, j) + at(k, j, i);
        t.set(i, j, k, sum / 6.0);
      }
  return t;
}

double CartanTensor::operator()(int i, int j, int k) const {
  return values_[static_cast<std::size_t>(sym3_index(i, j, k))];
}

void CartanTensor::set(int i, int j, int k, double value) {
  values_[static_cast<std::size_t>(sym3_index(i, j, k))] = value;
}

CartanTensor::Full CartanTensor::full() const {
  Full out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(i * 9 + j * 3 + k)] = (*this)(i, j, k);
  return out;
}

double CartanTensor::contract(const Vector3& a, const Vector3& b, const Vector3& c) const {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) sum += (*this)(i, j, k) * a[i] * b[j] * c[k];
  return sum;
}

double CartanTensor::evaluate(const Vector3& u, const Vector3& v, const Vector3& x) const {
  return contract(basis_.coordinates(u), basis_.coordinates(v), basis_.coordinates(x));
}

CartanTensor CartanTensor::in_basis(const Basis3& target) const {
  const Matrix3 m = basis_.coordinates_matrix(target);
  CartanTensor t(target);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k) t.set(i, j, k, contract(m.col(i), m.col(j), m.col(k)));
  return t;
}

double CartanTensor::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_difference(const CartanTensor& a, const CartanTensor& b) {
  const CartanTensor bb = b.basis().approx_equal(a.basis(), 0.0) ? b : b.in_basis(a.basis());
  double m = 0.0;
  for (std::size_t n = 0; n < 10; ++n) m = std::max(m, std::abs(a.packed()[n] - bb.packed()[n]));
  return m;
}

// Closed forms

double minkowski_norm(const Vector3& v, const RandersParam& p) {
  return std::sqrt(inner(v, v)) + p.xi() * v[2];
}

Vector3 normalize_reference(const Vector3& w) {
  const double n = std::sqrt(inner(w, w));
  if (!is_finite(w) || !(n >= kMinReferenceNorm)) {
    throw GeometryError(ErrorCode::DegenerateReference,
                        "reference vector must be finite with norm >= 1e-8");
  }
  // Idempotent on vectors that are already unit to rounding, so echoed
  // references re-evaluate bit-for-bit.
  if (std::abs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return w;
  return w / n;
}

void require_unit_reference(const Vector3& w) {
  if (!is_finite(w) || !(std::abs(std::sqrt(inner(w, w)) - 1.0) <= kUnitTolerance)) {
    throw GeometryError(ErrorCode::NotUnitReference,
                        "reference vector must satisfy <w,w> = 1; use normalize_reference");
  }
}

double horizontal_norm_squared(const Vector3& w) noexcept { return w[0] * w[0] + w[1] * w[1]; }

std::pair<Vector3, Vector3> orthonormal_completion(const Vector3& w) {
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(w[k]) < std::abs(w[axis])) axis = k;
  Vector3 seed = Vector3::Zero();
  seed[axis] = 1.0;
  Vector3 x2 = seed - inner(seed, w) * w;
  x2 /= std::sqrt(inner(x2, x2));
  return {x2, cross(w, x2)};
}

SymMetric3 osculating_metric(const Vector3& w, const RandersParam& p) {
  require_unit_reference(w);
  const Vector3 x0 = p.drift();
  const double a = inner(x0, w);
  const Matrix3 g = (1.0 + a) * Matrix3::Identity() + x0 * x0.transpose() -
                    a * w * w.transpose() + x0 * w.transpose() + w * x0.transpose();
  return SymMetric3(g);
}

CartanTensor cartan_tensor(const Vector3& w, const RandersParam& p) {
  require_unit_reference(w);
  const Vector3 x0 = p.drift();
  CartanTensor t;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k)
        t.set(i, j, k, cartan_closed(Vector3::Unit(i), Vector3::Unit(j), Vector3::Unit(k), w, x0));
  return t;
}

Vector3 cartan_vector(const Vector3& w, const RandersParam& p) {
  require_unit_reference(w);
  const SymMetric3 g = osculating_metric(w, p);
  const auto [x2, x3] = orthonormal_completion(w);
  const Matrix3 g_inv = g.in_basis(Basis3(w, x2, x3)).inverse();
  // trace(U -> C2(S, U)) = (g^22 + g^33)(<X0,S> - <X0,W><S,W>). The often
  // quoted factor 3/2 in front does not survive the substitution
  // C(X2, X3, X3) = <X0, X2> / 2; the definition-level trace pins it to 1.
  const double prefactor = g_inv(1, 1) + g_inv(2, 2);
  // Covector components in (X, Y, Z); the Z slot uses 1 - <Z,w>^2 = w1^2 + w2^2.
  const double xi = p.xi();
  const Vector3 trace{-xi * w[2] * w[0], -xi * w[2] * w[1], xi * horizontal_norm_squared(w)};
  return g.solve(prefactor * trace);
}

}  // namespace hfinsler
