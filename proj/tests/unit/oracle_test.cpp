#include "hfinsler/oracle.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "hfinsler/sampling.hpp"
#include "test_support.hpp"

namespace hfinsler {
namespace {

using testing::angle_sine;
using testing::max_abs;
using testing::relative_frobenius;

TEST(FundamentalSquared, MatchesSquaredNorm) {
  Sampler rng(1);
  for (int n = 0; n < 100; ++n) {
    const Vector3 v = rng.cube();
    const RandersParam p = rng.randers();
    const double f = minkowski_norm(v, p);
    EXPECT_NEAR(oracle::fundamental_squared(v, p), f * f, 1e-14);
  }
}

TEST(FdConfig, Validation) {
  EXPECT_NO_THROW(oracle::FdConfig::metric_default().validate());
  EXPECT_NO_THROW(oracle::FdConfig::cartan_default().validate());
  EXPECT_THROW((oracle::FdConfig{0.0, true}.validate()), GeometryError);
  EXPECT_THROW((oracle::FdConfig{1e-2, true}.validate()), GeometryError);
  EXPECT_THROW(oracle::metric_fd(unit_x(), RandersParam(0.3), {-1.0, false}), GeometryError);
}

TEST(MetricFd, CenterExample) {
  const RandersParam p(0.3);
  const Matrix3 expected = Vector3(1.3, 1.3, 1.69).asDiagonal();
  EXPECT_LE(relative_frobenius(oracle::metric_fd(unit_z(), p).matrix(), expected), 1e-6);
}

TEST(MetricFd, EuclideanWhenRiemannian) {
  const Vector3 w = normalize_reference(Vector3(0.2, 0.5, -0.4));
  EXPECT_LE(max_abs(oracle::metric_fd(w, RandersParam(0.0)).matrix(), Matrix3::Identity()), 1e-8);
}

TEST(MetricFd, ZeroHomogeneous) {
  const RandersParam p(0.3);
  EXPECT_LE(max_abs(oracle::metric_fd(2.0 * unit_z(), p).matrix(),
                    oracle::metric_fd(unit_z(), p).matrix()),
            1e-6);
}

TEST(MetricFd, RejectsZeroReference) {
  EXPECT_THROW(oracle::metric_fd(Vector3::Zero(), RandersParam(0.3)), GeometryError);
}

TEST(CartanFd, CenterVanishes) {
  EXPECT_LE(oracle::cartan_fd(unit_z(), RandersParam(0.3)).max_abs(), 1e-5);
}

TEST(CartanFd, ReferenceSlot) {
  const Vector3 w = normalize_reference(Vector3(0.6, -0.3, 0.2));
  const CartanTensor c = oracle::cartan_fd(w, RandersParam(0.7));
  EXPECT_NEAR(c.evaluate(w, unit_x(), unit_y()), 0.0, 1e-5);
  EXPECT_NEAR(c.evaluate(unit_z(), w, unit_z()), 0.0, 1e-5);
}

TEST(CartanFd, RichardsonImproves) {
  const Vector3 w = normalize_reference(Vector3(0.5, 0.4, 0.3));
  const RandersParam p(0.6);
  const CartanTensor exact = cartan_tensor(w, p);
  const double plain = max_abs_difference(exact, oracle::cartan_fd(w, p, {5e-3, false}));
  const double extrapolated = max_abs_difference(exact, oracle::cartan_fd(w, p, {5e-3, true}));
  EXPECT_LT(extrapolated, 0.1 * plain);
}

TEST(CartanFd, InBasis) {
  Sampler rng(6);
  const Basis3 b = rng.basis();
  const Vector3 w = normalize_reference(Vector3(1, 0, 0.2));
  const RandersParam p(0.5);
  // Components taken in a basis are the natural components contracted.
  const CartanTensor c = oracle::cartan_fd(w, p).in_basis(b);
  EXPECT_LE(max_abs_difference(cartan_tensor(w, p).in_basis(b), c), 1e-4);
}

TEST(CartanVectorTrace, Examples) {
  EXPECT_LE(oracle::cartan_vector_trace(unit_z(), RandersParam(0.3)).norm(), 1e-6);
  EXPECT_LE(oracle::cartan_vector_trace(unit_x(), RandersParam(0.0)).norm(), 1e-6);
  EXPECT_EQ(oracle::cartan_vector_trace(unit_x(), RandersParam(0.0), Basis3::natural(),
                                        oracle::TraceSource::ClosedForm)
                .norm(),
            0.0);
  const Vector3 c = oracle::cartan_vector_trace(unit_x(), RandersParam(0.5));
  EXPECT_LE(angle_sine(c, Vector3(-0.5, 0, 1)), 1e-5);
  // Not only the direction: the length is fixed by the trace too.
  EXPECT_LE((c - cartan_vector(unit_x(), RandersParam(0.5))).norm(), 1e-5 * c.norm());
}

TEST(CartanVectorTrace, BasisIndependent) {
  Sampler rng(17);
  for (int n = 0; n < 20; ++n) {
    const Vector3 w = rng.off_center_direction(0.05);
    const RandersParam p = rng.randers();
    const Basis3 b = rng.basis();
    const Vector3 natural =
        oracle::cartan_vector_trace(w, p, Basis3::natural(), oracle::TraceSource::ClosedForm);
    const Vector3 other = oracle::cartan_vector_trace(w, p, b, oracle::TraceSource::ClosedForm);
    EXPECT_LE((natural - other).norm(), 1e-11 * (1.0 + natural.norm()));
  }
}

TEST(CartanVectorTrace, ErrorOrder) {
  try {
    oracle::cartan_vector_trace(Vector3::Zero(), RandersParam(0.3));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateReference);
  }
  try {
    oracle::cartan_vector_trace(Vector3(2, 0, 0), RandersParam(0.3));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitReference);
  }
}

}  // namespace
}  // namespace hfinsler
