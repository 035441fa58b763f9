#pragma once

#include <array>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "hfinsler/error.hpp"

namespace hfinsler {

// Elements of the Heisenberg algebra, in coordinates w.r.t. the ordered
// orthonormal basis (X, Y, Z). Z spans the center.
using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

inline Vector3 unit_x() { return Vector3::UnitX(); }
inline Vector3 unit_y() { return Vector3::UnitY(); }
inline Vector3 unit_z() { return Vector3::UnitZ(); }

bool is_finite(const Vector3& v) noexcept;

/// Euclidean inner product for which (X, Y, Z) is orthonormal.
double inner(const Vector3& u, const Vector3& v) noexcept;

/// Right-handed cross product; (X, Y, Z) is positively oriented.
Vector3 cross(const Vector3& u, const Vector3& v) noexcept;

/// Lie bracket: [X, Y] = Z, everything else zero.
Vector3 bracket(const Vector3& u, const Vector3& v) noexcept;

/// An ordered basis of the algebra. The vectors are stored as the columns of
/// a matrix in (X, Y, Z) coordinates.
class Basis3 {
 public:
  static constexpr double kMinDeterminant = 1e-10;

  /// Throws GeometryError(SingularBasis) when |det| <= kMinDeterminant or a
  /// vector is not finite.
  Basis3(const Vector3& b1, const Vector3& b2, const Vector3& b3);

  static Basis3 natural();

  const Vector3& operator[](int i) const { return vectors_[static_cast<std::size_t>(i)]; }
  const Matrix3& matrix() const { return matrix_; }

  /// Coordinates of a natural-coordinate vector in this basis.
  Vector3 coordinates(const Vector3& v) const { return inverse_ * v; }
  /// Natural coordinates of the vector with the given coordinates here.
  Vector3 vector(const Vector3& coords) const { return matrix_ * coords; }
  /// Columns are the coordinates of `other`'s vectors in this basis.
  Matrix3 coordinates_matrix(const Basis3& other) const { return inverse_ * other.matrix_; }

  bool is_natural() const;
  bool approx_equal(const Basis3& other, double tol = 1e-14) const;

 private:
  std::array<Vector3, 3> vectors_;
  Matrix3 matrix_;
  Matrix3 inverse_;
};

}  // namespace hfinsler
