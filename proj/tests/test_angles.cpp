#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ptolemy_lab/angles.hpp"
#include "ptolemy_lab/random.hpp"

using namespace ptolemy_lab;
using std::numbers::pi;

TEST(ComparisonAngle, LawOfCosines) {
  EXPECT_NEAR(comparison_angle(1, 1, 1), pi / 3, 1e-15);
  EXPECT_NEAR(comparison_angle(3, 4, 5), pi / 2, 1e-15);
  EXPECT_NEAR(comparison_angle(1, 1, 2), pi, 1e-15);
  EXPECT_NEAR(comparison_angle(2, 1, 1), 0.0, 1e-15);
  // rounding just past the degenerate case is clamped
  EXPECT_NEAR(comparison_angle(1, 1, 2 + 1e-12), pi, 1e-5);
  EXPECT_THROW(comparison_angle(0, 1, 1), AngleError);
  EXPECT_THROW(comparison_angle(1, 1, 3), AngleError);
}

TEST(GeneralizedAngle, EuclideanAndMax) {
  NormedPlane euc{Norm::euclidean()};
  EXPECT_NEAR(generalized_angle(euc, point2(1, 0), point2(0, 1), 1, 1), pi / 2, 1e-15);
  EXPECT_NEAR(generalized_angle(euc, point2(1, 0), point2(0, 1), 0.25, 3), pi / 2, 1e-12);

  NormedPlane linf{Norm::max()};
  Point e1 = point2(1, 0), e2 = point2(0, 1);
  // |u - v|_inf = 1
  EXPECT_NEAR(generalized_angle(linf, e1, e2, 1, 1), pi / 3, 1e-15);
  // |(1/2, -1)|_inf = 1, so cos = (1/4 + 1 - 1) / 1
  EXPECT_NEAR(generalized_angle(linf, e1, e2, 0.5, 1), std::acos(0.25), 1e-15);
  // |(4, -1)|_inf = 4, so cos = (16 + 1 - 16) / 8
  EXPECT_NEAR(generalized_angle(linf, e1, e2, 4, 1), std::acos(0.125), 1e-15);
  EXPECT_THROW(generalized_angle(linf, point2(2, 0), e2, 1, 1), AngleError);
  EXPECT_THROW(generalized_angle(linf, e1, e2, 0, 1), AngleError);
}

TEST(GeneralizedAngle, ScaleInvariantDistances) {
  Rng rng(17);
  for (auto norm : {Norm::euclidean(), Norm::p_norm(1), Norm::p_norm(3), Norm::max()}) {
    NormedPlane plane{norm};
    for (int k = 0; k < 20; ++k) {
      Point u = unit_direction(plane, rng.uniform(0, 2 * pi));
      Point v = unit_direction(plane, rng.uniform(0, 2 * pi));
      double a = rng.uniform(0.1, 3), b = rng.uniform(0.1, 3), s = rng.uniform(0.01, 10);
      EXPECT_NEAR(plane.distance(s * a * u, s * b * v) / s, plane.distance(a * u, b * v), 1e-12);
      double ang = generalized_angle(plane, u, v, a, b);
      EXPECT_GE(ang, 0.0);
      EXPECT_LE(ang, pi);
    }
  }
}

TEST(WeakAngle, EuclideanExists) {
  NormedPlane euc{Norm::euclidean()};
  for (int k = 0; k < 8; ++k) {
    double th = 0.3 + k * 0.37;
    auto prof = weak_angle_profile(euc, unit_direction(euc, 0.3), unit_direction(euc, th));
    EXPECT_TRUE(prof.exists);
    EXPECT_LT(prof.max_gap, 1e-9);
    double want = std::fmod(k * 0.37, 2 * pi);
    if (want > pi) want = 2 * pi - want;
    EXPECT_NEAR(prof.value, want, 1e-9);
  }
}

TEST(WeakAngle, MaxNormHasNone) {
  NormedPlane linf{Norm::max()};
  auto prof = weak_angle_profile(linf, point2(1, 0), point2(0, 1));
  EXPECT_FALSE(prof.exists);
  ASSERT_TRUE(prof.witness_ratios);
  EXPECT_EQ(prof.witness_ratios->first, 1.0);
  EXPECT_EQ(prof.witness_ratios->second, 0.5);
  EXPECT_NEAR(prof.witness_gap, std::acos(0.25) - pi / 3, 1e-9);
  EXPECT_NEAR(prof.max_gap, std::acos(0.125) - pi / 3, 1e-9);
}

TEST(WeakAngle, SameDirectionIsZero) {
  for (auto norm : {Norm::euclidean(), Norm::max(), Norm::p_norm(1.5)}) {
    NormedPlane plane{norm};
    Point u = unit_direction(plane, 0.8);
    auto prof = weak_angle_profile(plane, u, u, default_scale_grid());
    EXPECT_NEAR(prof.reference, 0.0, 1e-7);
  }
  NormedPlane euc{Norm::euclidean()};
  EXPECT_THROW(weak_angle_profile(euc, point2(1, 0), point2(0, 1), {}), AngleError);
  EXPECT_THROW(weak_angle_profile(euc, point2(1, 0), point2(0, 1), {1.0, -2.0}), AngleError);
}

TEST(AxiomSuite, EuclideanPasses) {
  NormedPlane euc{Norm::euclidean()};
  std::vector<Point> dirs;
  for (int k = 0; k < 8; ++k) dirs.push_back(unit_direction(euc, k * pi / 4 + 0.1));
  auto rep = angle_axiom_suite(euc, dirs);
  EXPECT_TRUE(rep.passed);
  ASSERT_EQ(rep.axioms.size(), 4u);
  for (const auto& a : rep.axioms) EXPECT_TRUE(a.passed) << a.name << " " << a.worst;
  EXPECT_NEAR(rep.weak_angles[0][4], pi, 1e-9);
  EXPECT_NEAR(rep.weak_angles[1][3], pi / 2, 1e-9);
}

TEST(AxiomSuite, MaxNormThrows) {
  NormedPlane linf{Norm::max()};
  std::vector<Point> dirs{point2(1, 0), point2(0, 1)};
  try {
    angle_axiom_suite(linf, dirs);
    FAIL() << "expected NoWeakAngle";
  } catch (const NoWeakAngle& e) {
    EXPECT_EQ(e.first(), 0u);
    EXPECT_EQ(e.second(), 1u);
    EXPECT_GT(e.gap(), 0.2);
  }
}
