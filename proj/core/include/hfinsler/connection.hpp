#pragma once

#include <array>

#include "hfinsler/frame.hpp"
#include "hfinsler/randers.hpp"

namespace hfinsler {

/// Coefficients of the bilinear map nabla^W in a declared basis B:
/// nabla_{B_i} B_j = sum_k gamma(i, j, k) B_k. Indices are 0-based.
class ConnectionTable {
 public:
  explicit ConnectionTable(Basis3 basis);

  double operator()(int i, int j, int k) const { return gamma_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return gamma_[index(i, j, k)]; }

  /// Components of nabla_{B_i} B_j in this basis.
  Vector3 row(int i, int j) const;
  void set_row(int i, int j, const Vector3& coords);

  const Basis3& basis() const noexcept { return basis_; }

  /// nabla_u v for vectors in (X, Y, Z) coordinates; result likewise.
  Vector3 apply(const Vector3& u, const Vector3& v) const;

 private:
  static std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>(i * 9 + j * 3 + k);
  }

  std::array<double, 27> gamma_{};
  Basis3 basis_;
};

struct FCoeffs {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
  double f5 = 0.0;
};

enum class CenterSide { Positive, Negative };

inline constexpr double kOrthonormalTolerance = 1e-10;

/// The connection-free part of the Koszul-type formula for left-invariant
/// fields: <[x,y],z>_g - <[y,z],x>_g + <[z,x],y>_g.
double koszul_part(const Vector3& x, const Vector3& y, const Vector3& z, const SymMetric3& g);

/// Three-stage elimination (nabla_W W, then nabla_{E_s} W, then
/// nabla_{E_s} E_t) for a g-orthonormal basis, given g and C at the unit
/// reference w. Passing a zero Cartan tensor gives the plain Koszul solve.
ConnectionTable solve_chern_rund(const Vector3& w, const SymMetric3& g, const CartanTensor& c,
                                 const Basis3& basis);

/// Uses the closed-form metric and the closed-form Cartan tensor changed to
/// `basis`. Throws NotOrthonormalBasis unless the basis is g_W-orthonormal to
/// 1e-10.
ConnectionTable solve_chern_rund(const Vector3& w, const RandersParam& p, const Basis3& basis);

/// Same elimination on the Berwald-Moor frame, taking the Cartan terms from
/// frame_cartan_components.
ConnectionTable solve_chern_rund(const MoorFrame& f, const RandersParam& p);

/// f1..f5 as functions of w = |W|_W and xi. The bracket term of f5 is
/// evaluated on the reference sqrt(1 - z^2) X + z Z, z = (w - 1) / xi.
/// Throws RiemannianCase (xi == 0) or CentralReference ((w-1)^2 >= xi^2).
FCoeffs f_coefficients(double w_scalar, const RandersParam& p);
/// As above, with the bracket term of f5 taken from the given frame.
FCoeffs f_coefficients(const MoorFrame& f, const RandersParam& p);

/// The closed-form table in the Berwald-Moor frame. Torsion partners come
/// from nabla_X Y - nabla_Y X = [X, Y] and the closed frame brackets.
ConnectionTable closed_frame_table(const MoorFrame& f, const RandersParam& p);

/// The table at W = +Z (or -Z) in the natural basis (X, Y, Z).
ConnectionTable central_table(const RandersParam& p, CenterSide side = CenterSide::Positive);

/// (X / sqrt(1 +- xi), Y / sqrt(1 +- xi), Z / (1 +- xi)): orthonormal for g at +-Z.
Basis3 central_orthonormal_basis(const RandersParam& p, CenterSide side = CenterSide::Positive);

/// Gram-Schmidt of `seed` with respect to g.
Basis3 orthonormalize(const Basis3& seed, const SymMetric3& g);

/// Re-expresses a table in another basis (bilinear in the lower slots,
/// contravariant in the upper one).
ConnectionTable change_basis(const ConnectionTable& t, const Basis3& to);

/// nabla_{B_i} W for each basis vector B_i, in (X, Y, Z) coordinates.
std::array<Vector3, 3> reference_derivatives(const ConnectionTable& t, const Vector3& w);

/// max |sum_k (gamma_ijk - gamma_jik) B_k - [B_i, B_j]| over i, j.
double torsion_residual(const ConnectionTable& t);

/// max |<nabla_u v, x> + <v, nabla_u x> + 2 C(nabla_u W, v, x)| over basis
/// triples, with the closed-form g_W and C_W at unit w.
double almost_metric_residual(const ConnectionTable& t, const Vector3& w, const RandersParam& p);

/// Worst componentwise disagreement of two tables, compared in a's basis.
struct TableDiscrepancy {
  double max_abs = 0.0;
  int i = 0;
  int j = 0;
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;

  bool within(double tol) const { return max_abs <= tol; }
};

TableDiscrepancy compare_tables(const ConnectionTable& a, const ConnectionTable& b);

}  // namespace hfinsler
