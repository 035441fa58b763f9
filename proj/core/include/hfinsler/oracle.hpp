#pragma once

// Definition-level reference computations. Nothing here uses the closed forms
// of randers.hpp (except cartan_vector_trace when explicitly asked to), so the
// two can be checked against each other.

#include "hfinsler/randers.hpp"

namespace hfinsler::oracle {

struct FdConfig {
  double step = 5e-3;
  bool richardson = true;

  static FdConfig metric_default() { return {1e-3, true}; }
  static FdConfig cartan_default() { return {5e-3, true}; }

  /// Throws GeometryError(InvalidParameter) unless 0 < step < 1e-2.
  void validate() const;
};

/// F^2(v) evaluated without squaring a rounded F.
double fundamental_squared(const Vector3& v, const RandersParam& p);

/// g_W(B_i, B_j) = 1/2 d^2 F^2(w + s B_i + t B_j) / ds dt, central differences
/// with h = step * max(1, |w|). Accepts any nonzero w.
SymMetric3 metric_fd(const Vector3& w, const RandersParam& p,
                     const FdConfig& cfg = FdConfig::metric_default());

/// C_W(B_i, B_j, B_k) = 1/4 d^3 F^2(w + r B_i + s B_j + t B_k) / dr ds dt on an
/// 8-point stencil, symmetrized over index permutations.
CartanTensor cartan_fd(const Vector3& w, const RandersParam& p,
                       const FdConfig& cfg = FdConfig::cartan_default());

enum class TraceSource { FiniteDifference, ClosedForm };

/// Cartan vector from its definition: t_k = g^{ij} C(B_k, B_i, B_j) in `basis`,
/// then g c = t. Returned in (X, Y, Z) coordinates. Throws SingularMetric when
/// the 1-norm condition estimate of g exceeds 1e12.
Vector3 cartan_vector_trace(const Vector3& w, const RandersParam& p,
                            const Basis3& basis = Basis3::natural(),
                            TraceSource source = TraceSource::FiniteDifference,
                            const FdConfig& cfg = FdConfig::cartan_default());

}  // namespace hfinsler::oracle
