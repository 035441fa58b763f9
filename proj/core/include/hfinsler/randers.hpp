#pragma once

#include <array>
#include <utility>

#include "hfinsler/algebra.hpp"

namespace hfinsler {

/// The deformation parameter xi of the drift X0 = xi * Z. Admits 0 <= xi < 1;
/// xi == 0 is the Riemannian (Euclidean) case.
class RandersParam {
 public:
  /// Throws GeometryError(InvalidParameter) outside [0, 1) or for NaN/Inf.
  explicit RandersParam(double xi);

  double xi() const noexcept { return xi_; }
  Vector3 drift() const { return xi_ * unit_z(); }
  bool is_riemannian() const noexcept { return xi_ == 0.0; }

 private:
  double xi_;
};

/// A symmetric bilinear form on the algebra, with components g(B_i, B_j) in a
/// declared basis B. Only the upper triangle is stored.
class SymMetric3 {
 public:
  static constexpr double kMinDeterminant = 1e-14;

  /// Takes the upper triangle of `components`.
  explicit SymMetric3(const Matrix3& components, Basis3 basis = Basis3::natural());

  double operator()(int i, int j) const;
  Matrix3 matrix() const;
  const Basis3& basis() const noexcept { return basis_; }

  /// g(u, v) for vectors given in (X, Y, Z) coordinates.
  double inner(const Vector3& u, const Vector3& v) const;
  double norm(const Vector3& u) const;

  /// Same bilinear form, components taken in `target`.
  SymMetric3 in_basis(const Basis3& target) const;

  /// Inverse component matrix g^{ij}. Throws GeometryError(SingularMetric)
  /// when |det| < kMinDeterminant.
  Matrix3 inverse() const;
  /// Solves g x = rhs in component space.
  Vector3 solve(const Vector3& rhs) const;

  /// All leading principal minors strictly positive.
  bool is_positive_definite() const;
  double min_eigenvalue() const;

 private:
  std::array<double, 6> upper_{};
  Basis3 basis_;
};

/// A totally symmetric trilinear form, stored as its 10 independent
/// components C(B_i, B_j, B_k), i <= j <= k, in a declared basis.
class CartanTensor {
 public:
  using Full = std::array<double, 27>;

  explicit CartanTensor(Basis3 basis = Basis3::natural());

  /// Averages a full 3x3x3 array (index i*9 + j*3 + k) over index permutations.
  static CartanTensor symmetrized(const Full& full, Basis3 basis = Basis3::natural());

  double operator()(int i, int j, int k) const;
  void set(int i, int j, int k, double value);

  const Basis3& basis() const noexcept { return basis_; }
  const std::array<double, 10>& packed() const noexcept { return values_; }
  Full full() const;

  /// C(u, v, x) for component vectors in this tensor's basis.
  double contract(const Vector3& a, const Vector3& b, const Vector3& c) const;
  /// C(u, v, x) for vectors in (X, Y, Z) coordinates.
  double evaluate(const Vector3& u, const Vector3& v, const Vector3& x) const;

  CartanTensor in_basis(const Basis3& target) const;
  double max_abs() const;

 private:
  std::array<double, 10> values_{};
  Basis3 basis_;
};

/// Largest componentwise difference; both tensors are compared in a's basis.
double max_abs_difference(const CartanTensor& a, const CartanTensor& b);

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kMinReferenceNorm = 1e-8;

/// F(v) = |v| + xi <Z, v>.
double minkowski_norm(const Vector3& v, const RandersParam& p);

/// w / |w|. Throws GeometryError(DegenerateReference) for |w| < 1e-8 or
/// non-finite input. This is the only way user vectors become references.
Vector3 normalize_reference(const Vector3& w);

/// Throws GeometryError(NotUnitReference) unless | |w| - 1 | <= 1e-12.
void require_unit_reference(const Vector3& w);

/// 1 - <Z, w>^2 for unit w, evaluated as the squared horizontal part.
double horizontal_norm_squared(const Vector3& w) noexcept;

/// Euclidean-orthonormal (X2, X3) completing unit w, built from the natural
/// axis least parallel to w (first index wins ties); X3 = w x X2.
std::pair<Vector3, Vector3> orthonormal_completion(const Vector3& w);

/// Osculating metric g_W in the (X, Y, Z) basis, closed form. Requires unit w.
SymMetric3 osculating_metric(const Vector3& w, const RandersParam& p);

/// Cartan tensor C_W in the (X, Y, Z) basis via the cyclic-sum closed form.
/// Requires unit w.
CartanTensor cartan_tensor(const Vector3& w, const RandersParam& p);

/// Cartan vector C_W: the g_W-dual of the trace of the (1,2) Cartan tensor,
/// from the closed trace formula and one 3x3 solve. Requires unit w.
/// C_W lies in span(w, Z) and is g_W-orthogonal to w.
Vector3 cartan_vector(const Vector3& w, const RandersParam& p);

}  // namespace hfinsler
