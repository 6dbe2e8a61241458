#include "widecal/camera.hpp"

#include <gtest/gtest.h>

#include "testutil.hpp"

using namespace widecal;
using namespace widecal::testutil;

namespace {

std::vector<CameraModel> all_models() {
  return {make_pinhole(), make_ds_190(), make_kb_190(), make_omni()};
}

}  // namespace

TEST(Pinhole, PrincipalAxisMapsToPrincipalPoint) {
  auto m = make_pinhole();
  Vec2 u = m.project({0.0, 0.0, 2.0});
  EXPECT_DOUBLE_EQ(u.x(), 320.0);
  EXPECT_DOUBLE_EQ(u.y(), 240.0);
}

TEST(Pinhole, OffAxisProjection) {
  auto m = make_pinhole();
  Vec2 u = m.project({1.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(u.x(), 820.0);
  EXPECT_DOUBLE_EQ(u.y(), 240.0);
}

TEST(Pinhole, DegenerateDepthIsDomainError) {
  auto m = make_pinhole();
  EXPECT_THROW(m.project({0.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(m.project({0.1, 0.0, -1.0}), DomainError);
}

TEST(Pinhole, PrincipalPointUnprojectsToAxis) {
  auto m = make_pinhole();
  Vec3 b = m.unproject({320.0, 240.0});
  EXPECT_NEAR((b - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
}

TEST(Pinhole, ScaleInvariance) {
  auto m = make_pinhole();
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Vec3 x = random_bearing(rng, deg2rad(40.0)) * rng.uniform(0.2, 5.0);
    double lambda = rng.uniform(0.01, 100.0);
    Vec2 a = m.project(x);
    Vec2 b = m.project(lambda * x);
    EXPECT_NEAR((a - b).norm(), 0.0, 1e-9);
  }
}

TEST(Pinhole, JacobianAtPrincipalAxis) {
  auto m = make_pinhole();
  Mat23 jp;
  Eigen::Matrix<double, 2, Eigen::Dynamic> jpar;
  m.project_jacobians({0.0, 0.0, 1.0}, jp, jpar);
  Mat23 expected;
  expected << 500, 0, 0, 0, 500, 0;
  EXPECT_NEAR((jp - expected).norm(), 0.0, 1e-12);
  // additive principal point offset
  EXPECT_DOUBLE_EQ(jpar(0, 2), 1.0);
  EXPECT_DOUBLE_EQ(jpar(0, 3), 0.0);
  EXPECT_DOUBLE_EQ(jpar(1, 3), 1.0);
}

TEST(AllModels, PrincipalPointFixedPoint) {
  for (const auto& m : all_models()) {
    Vec2 u = m.project({0.0, 0.0, 1.0});
    Vec2 pp = m.principal_point();
    EXPECT_DOUBLE_EQ(u.x(), pp.x()) << m.name();
    EXPECT_DOUBLE_EQ(u.y(), pp.y()) << m.name();
  }
}

TEST(AllModels, RoundTrip) {
  for (const auto& m : all_models()) {
    Rng rng(11);
    double fov = test_fov_polar(m);
    for (int i = 0; i < 2000; ++i) {
      Vec3 b = random_bearing(rng, fov);
      auto u = m.try_project(b);
      ASSERT_TRUE(u.has_value()) << m.name();
      auto back = m.try_unproject(*u);
      ASSERT_TRUE(back.has_value()) << m.name();
      double angular = std::acos(std::clamp(b.dot(*back), -1.0, 1.0));
      EXPECT_LT(angular, 1e-6) << m.name() << " sample " << i;
    }
  }
}

TEST(AllModels, UnprojectReturnsUnitNorm) {
  for (const auto& m : all_models()) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      Vec3 b = random_bearing(rng, test_fov_polar(m));
      Vec3 back = m.unproject(m.project(b));
      EXPECT_NEAR(back.norm(), 1.0, 1e-12);
    }
  }
}

TEST(AllModels, JacobiansMatchFiniteDifferences) {
  for (const auto& m : all_models()) {
    Rng rng(23);
    double fov = test_fov_polar(m) * 0.95;
    for (int i = 0; i < 1000; ++i) {
      Vec3 x = random_bearing(rng, fov) * rng.uniform(0.3, 4.0);
      Mat23 jp;
      Eigen::Matrix<double, 2, Eigen::Dynamic> jpar;
      ASSERT_TRUE(m.try_project_jacobians(x, jp, jpar)) << m.name();
      Mat23 jp_fd = fd_point_jacobian(m, x);
      Eigen::MatrixXd jpar_fd = fd_param_jacobian(m, x);
      double rel_p = (jp - jp_fd).norm() / std::max(1.0, jp_fd.norm());
      double rel_i = (jpar - jpar_fd).norm() / std::max(1.0, jpar_fd.norm());
      EXPECT_LT(rel_p, 1e-4) << m.name() << " point jacobian, sample " << i;
      EXPECT_LT(rel_i, 1e-4) << m.name() << " param jacobian, sample " << i;
    }
  }
}

TEST(AllModels, PolarAngle) {
  for (const auto& m : all_models()) {
    EXPECT_NEAR(m.polar_angle_deg(m.principal_point()), 0.0, 1e-6) << m.name();
    double fov = rad2deg(test_fov_polar(m));
    Vec3 b = bearing(deg2rad(0.6 * fov), 0.35);
    EXPECT_NEAR(m.polar_angle_deg(m.project(b)), 0.6 * fov, 1e-6) << m.name();
  }
  // 45-degree bearing through a model that covers it exactly
  auto ds = make_ds_190();
  EXPECT_NEAR(ds.polar_angle_deg(ds.project(bearing(deg2rad(45.0), 0.0))), 45.0, 1e-9);
}

TEST(OrthogonalAxisBearing, PolarAngleIs90) {
  auto ds = make_ds_190();
  Vec2 u = ds.project({1.0, 0.0, 0.0});
  EXPECT_NEAR(ds.polar_angle_deg(u), 90.0, 1e-9);
}

TEST(KannalaBrandt, OutsideInvertibleRegionIsDomainError) {
  auto m = make_kb_190();
  // max theta is 100 deg; a pixel far outside the image circle cannot invert
  EXPECT_THROW(m.unproject({5000.0, 255.5}), DomainError);
}

TEST(KannalaBrandt, BeyondMaxThetaProjectFails) {
  auto m = make_kb_190();
  EXPECT_FALSE(m.try_project(bearing(deg2rad(130.0), 0.0)).has_value());
}

TEST(DoubleSphere, BehindValidConeProjectFails) {
  auto m = make_ds_190();
  EXPECT_FALSE(m.try_project(bearing(deg2rad(170.0), 0.0)).has_value());
  EXPECT_FALSE(m.try_project({0.0, 0.0, -1.0}).has_value());
}

TEST(Monotonicity, ImageRadiusIncreasesWithPolarAngle) {
  for (const auto& m : {make_ds_190(), make_kb_190()}) {
    Vec2 pp = m.principal_point();
    double prev = -1.0;
    for (int i = 1; i <= 95; ++i) {
      Vec2 u = m.project(bearing(deg2rad(static_cast<double>(i)), 0.0));
      double r = (u - pp).norm();
      EXPECT_GT(r, prev) << m.name() << " at " << i << " deg";
      prev = r;
    }
  }
}

TEST(CameraModel, ParamsRoundTrip) {
  for (const auto& m : all_models()) {
    Eigen::VectorXd p = m.params();
    CameraModel m2 = m.with_params(p);
    EXPECT_TRUE(m2.params().isApprox(p)) << m.name();
    EXPECT_EQ(m2.name(), m.name());
  }
}

TEST(CameraModel, InvalidParamsRejected) {
  EXPECT_THROW(CameraModel(PinholeParams{-1.0, 500.0, 0.0, 0.0}, 64, 64), ConfigError);
  EXPECT_THROW(CameraModel(DoubleSphereParams{100, 100, 0, 0, 0.0, 1.5}, 64, 64), ConfigError);
  EXPECT_THROW(CameraModel(PinholeParams{100, 100, 0, 0}, 0, 64), ConfigError);
  // strongly negative k1 breaks monotonicity well inside the FOV
  EXPECT_THROW(
      CameraModel(KannalaBrandtParams{150, 150, 255, 255, -0.5, 0, 0, 0, deg2rad(100.0)}, 512,
                  512),
      ConfigError);
}
