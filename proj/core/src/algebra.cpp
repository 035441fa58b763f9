#include "hfinsler/algebra.hpp"

#include <cmath>

#include <Eigen/LU>

namespace hfinsler {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotUnitReference: return "NotUnitReference";
    case ErrorCode::DegenerateReference: return "DegenerateReference";
    case ErrorCode::CentralReference: return "CentralReference";
    case ErrorCode::RiemannianCase: return "RiemannianCase";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::NotOrthonormalBasis: return "NotOrthonormalBasis";
  }
  return "Unknown";
}

bool is_finite(const Vector3& v) noexcept {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

double inner(const Vector3& u, const Vector3& v) noexcept {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

Vector3 cross(const Vector3& u, const Vector3& v) noexcept {
  return {u[1] * v[2] - u[2] * v[1],
          u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}

Vector3 bracket(const Vector3& u, const Vector3& v) noexcept {
  return {0.0, 0.0, u[0] * v[1] - u[1] * v[0]};
}

Basis3::Basis3(const Vector3& b1, const Vector3& b2, const Vector3& b3)
    : vectors_{b1, b2, b3} {
  matrix_.col(0) = b1;
  matrix_.col(1) = b2;
  matrix_.col(2) = b3;
  const double det = matrix_.determinant();
  if (!is_finite(b1) || !is_finite(b2) || !is_finite(b3) ||
      !(std::abs(det) > kMinDeterminant)) {
    throw GeometryError(ErrorCode::SingularBasis,
                        "basis vectors are linearly dependent (|det| <= 1e-10)");
  }
  inverse_ = matrix_.inverse();
}

Basis3 Basis3::natural() { return {unit_x(), unit_y(), unit_z()}; }

bool Basis3::is_natural() const { return matrix_ == Matrix3::Identity(); }

bool Basis3::approx_equal(const Basis3& other, double tol) const {
  return (matrix_ - other.matrix_).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace hfinsler
