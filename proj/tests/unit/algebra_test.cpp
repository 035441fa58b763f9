#include "hfinsler/algebra.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "hfinsler/sampling.hpp"
#include "test_support.hpp"

namespace hfinsler {
namespace {

using testing::max_abs;

TEST(Algebra, InnerProduct) {
  EXPECT_EQ(inner(unit_x(), unit_x()), 1.0);
  EXPECT_EQ(inner(unit_x(), unit_z()), 0.0);
  EXPECT_EQ(inner(Vector3(1, 2, 3), Vector3(4, 5, 6)), 32.0);
}

TEST(Algebra, CrossIsRightHanded) {
  EXPECT_EQ(cross(unit_x(), unit_y()), unit_z());
  EXPECT_EQ(cross(unit_x(), unit_x()), Vector3::Zero());
  EXPECT_EQ(cross(unit_x(), unit_z()), -unit_y());
}

TEST(Algebra, BracketTable) {
  EXPECT_EQ(bracket(unit_x(), unit_y()), unit_z());
  EXPECT_EQ(bracket(unit_y(), unit_x()), -unit_z());
  EXPECT_EQ(bracket(unit_x(), unit_z()), Vector3::Zero());
  EXPECT_EQ(bracket(unit_y(), unit_z()), Vector3::Zero());
  EXPECT_EQ(bracket(Vector3(1, 1, 0), Vector3(2, 2, 5)), Vector3::Zero());
}

TEST(Algebra, BracketProperties) {
  Sampler rng(3);
  for (int n = 0; n < 200; ++n) {
    const Vector3 u = rng.cube(), v = rng.cube(), x = rng.cube();
    EXPECT_LE(max_abs(bracket(u, v), -bracket(v, u)), 1e-15);
    // Two-step nilpotent: every bracket is central.
    EXPECT_EQ(bracket(u, v)[0], 0.0);
    EXPECT_EQ(bracket(u, v)[1], 0.0);
    EXPECT_EQ(bracket(bracket(u, v), x), Vector3::Zero());
    // Bilinear.
    EXPECT_LE(max_abs(bracket(u + 2.0 * x, v), bracket(u, v) + 2.0 * bracket(x, v)), 1e-14);
  }
}

TEST(Basis3, NaturalRoundTrip) {
  const Basis3 b = Basis3::natural();
  EXPECT_TRUE(b.is_natural());
  EXPECT_EQ(b.coordinates(Vector3(1, 2, 3)), Vector3(1, 2, 3));
}

TEST(Basis3, CoordinatesRoundTrip) {
  Sampler rng(5);
  for (int n = 0; n < 100; ++n) {
    const Basis3 b = rng.basis();
    const Vector3 v = rng.cube();
    EXPECT_LE(max_abs(b.vector(b.coordinates(v)), v), 1e-12);
    EXPECT_LE(max_abs(b.coordinates(b[1]), unit_y()), 1e-12);
  }
}

TEST(Basis3, CoordinatesMatrixComposes) {
  const Basis3 a({2, 0, 0}, {0, 1, 1}, {0, 0, 1});
  const Basis3 b({1, 1, 0}, {0, 1, 0}, {1, 0, 1});
  const Matrix3 m = a.coordinates_matrix(b);
  for (int i = 0; i < 3; ++i) EXPECT_LE(max_abs(a.vector(m.col(i)), b[i]), 1e-15);
}

TEST(Basis3, RejectsSingular) {
  try {
    Basis3(unit_x(), unit_y(), unit_x() + unit_y());
    FAIL() << "expected SingularBasis";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularBasis);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Basis3(unit_x(), unit_y(), Vector3(0, 0, nan)), GeometryError);
}

TEST(Basis3, ApproxEqual) {
  const Basis3 a = Basis3::natural();
  EXPECT_TRUE(a.approx_equal(Basis3(unit_x(), unit_y(), unit_z())));
  EXPECT_FALSE(a.approx_equal(Basis3(unit_x(), unit_y(), 2.0 * unit_z())));
}

}  // namespace
}  // namespace hfinsler
