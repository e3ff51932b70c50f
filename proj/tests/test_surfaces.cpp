#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bour/bour/minimal.hpp"
#include "bour/examples.hpp"
#include "bour/surfaces/geometry.hpp"
#include "bour/surfaces/helicoidal.hpp"
#include "bour/surfaces/rotational.hpp"
#include "support.hpp"

using namespace bour;
using testing_support::expr_fn;
using testing_support::random_profile;

namespace {

HelicoidalSurface make(HelicoidalKind k, double lam, const char* x, const char* y, const char* z, const char* w,
                       Interval u, Interval v = {-1, 1}) {
  ProfileCurve p;
  p.interval = u;
  p.x = expr_fn(x, u);
  p.y = expr_fn(y, u);
  p.z = expr_fn(z, u);
  p.w = expr_fn(w, u);
  SurfaceOptions o;
  o.v = v;
  return HelicoidalSurface(k, p, lam, o);
}

constexpr HelicoidalKind kinds[] = {HelicoidalKind::I, HelicoidalKind::IIa, HelicoidalKind::IIb, HelicoidalKind::III};

}  // namespace

TEST(Helicoidal, TypeOneAtZeroAngle) {
  const HelicoidalSurface X = make(HelicoidalKind::I, 0.5, "u", "0", "u^2", "u^3", {1, 2}, {-1, 1});
  const Vec4 p = X.eval(1.5, 0);
  EXPECT_NEAR(p.x1, 1.5, 1e-15);
  EXPECT_EQ(p.x2, 0);
  EXPECT_NEAR(p.x3, 2.25, 1e-15);
  EXPECT_NEAR(p.x4, 3.375, 1e-15);
}

TEST(Helicoidal, TypeTwoAAtZeroAngle) {
  const HelicoidalSurface X = make(HelicoidalKind::IIa, 1, "u", "0.1*u", "0", "u", {1, 2});
  const Vec4 p = X.eval(1.5, 0);
  EXPECT_NEAR(p.x1, 1.5, 1e-15);
  EXPECT_NEAR(p.x2, 0.15, 1e-15);
  EXPECT_EQ(p.x3, 0);
  EXPECT_NEAR(p.x4, 1.5, 1e-15);
}

TEST(Helicoidal, TypeThreeExampleFourPoint) {
  const HelicoidalSurface X = make(HelicoidalKind::III, 5, "0", "0", "u", "u", {0.5, 4}, {-3, 3});
  const Vec4 p = X.eval(1, 0);
  EXPECT_NEAR(p.x1, 0, 1e-15);
  EXPECT_NEAR(p.x2, 0, 1e-15);
  EXPECT_NEAR(p.x3, 0, 1e-15);
  EXPECT_NEAR(p.x4, std::sqrt(2.0), 1e-15);
}

TEST(Helicoidal, OutsideDomainThrows) {
  const HelicoidalSurface X = make(HelicoidalKind::I, 0.5, "u", "0", "u^2", "u^3", {1, 2});
  EXPECT_THROW(X.eval(2.5, 0), DomainError);
  EXPECT_THROW(X.eval(1.5, 3), DomainError);
}

TEST(Helicoidal, RejectsSpacelikeSurface) {
  EXPECT_THROW(make(HelicoidalKind::I, 0.5, "u", "0", "u", "0", {1, 2}), DomainError);
}

TEST(Helicoidal, TypeThreeRejectsStationaryW) {
  EXPECT_THROW(make(HelicoidalKind::III, 1, "0", "0", "u", "(u-1.5)^2+1", {1, 2}), DomainError);
}

TEST(Helicoidal, PivotZeroSplitsDomain) {
  const HelicoidalSurface X = make(HelicoidalKind::III, 5, "0", "0", "u", "u", {-4, 4}, {-3, 3});
  ASSERT_EQ(X.domain().pieces.size(), 2u);
  EXPECT_NEAR(X.domain().pieces[0].hi, -default_clip, 1e-9);
  EXPECT_NEAR(X.domain().pieces[1].lo, default_clip, 1e-9);
  EXPECT_THROW(X.eval(0, 0), DomainError);
}

TEST(FirstForm, TypeOneClosedMetric) {
  const HelicoidalSurface X = make(HelicoidalKind::I, 0.5, "u", "0", "0", "3*u^2", {0.9, 2});
  const Forms1 g = first_fundamental(X, 1, 0.3);
  EXPECT_NEAR(g.g22, 0.75, 1e-12);
  EXPECT_NEAR(g.g12, -0.5 * 6, 1e-12);
}

TEST(FirstForm, TypeTwoAClosedMetric) {
  const HelicoidalSurface X = make(HelicoidalKind::IIa, 1, "0.2*u", "0", "0", "u", {0.5, 2});
  EXPECT_NEAR(first_fundamental(X, 1, 0.4).g22, 2, 1e-12);
}

TEST(FirstForm, GenericMatchesClosedAndW) {
  std::mt19937_64 rng(11);
  for (HelicoidalKind k : kinds)
    for (int i = 0; i < 10; ++i) {
      const HelicoidalSurface X = random_profile(k, rng).surface();
      for (double u : {1.1, 1.5, 1.9})
        for (double v : {-0.7, 0.2, 0.9}) {
          const Forms1 g = first_fundamental(X, u, v), c = closed_first_fundamental(X, u);
          EXPECT_NEAR(g.g11, c.g11, 1e-10 * (1 + std::fabs(c.g11)));
          EXPECT_NEAR(g.g12, c.g12, 1e-10 * (1 + std::fabs(c.g12)));
          EXPECT_NEAR(g.g22, c.g22, 1e-10 * (1 + std::fabs(c.g22)));
          EXPECT_NEAR(g.W(), closed_W(X, u), 1e-10 * std::fabs(closed_W(X, u)));
        }
    }
}

TEST(Frames, UnitNormalsForRandomProfiles) {
  std::mt19937_64 rng(12);
  for (HelicoidalKind k : kinds)
    for (int i = 0; i < 10; ++i) {
      const HelicoidalSurface X = random_profile(k, rng).surface();
      const FrameField f = frame(X, 1.3, 0.4);
      EXPECT_NEAR(inner4(f.N1, f.N1), 1, 1e-12);
      EXPECT_LT(frame_defect(f), 1e-9);
    }
}

TEST(Frames, TypeThreeFirstNormal) {
  const HelicoidalSurface X = make(HelicoidalKind::III, 1, "0.5*u", "0", "u", "u^2", {1, 2});
  const ProfileJet p = X.profile_jet_at(1.5);
  const Vec4 N1 = eta1 + null_basis().xi3 * (p.x.d / p.w.d);
  const NormalPair n = X.normals(1.5, 0.2);
  EXPECT_NEAR(inner4(N1, N1), 1, 1e-15);
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(n.N1[c], N1[c], 1e-12);
}

TEST(Frames, SpacelikeMeridianGivesPositiveEpsilon) {
  const HelicoidalSurface X = make(HelicoidalKind::I, 1, "u", "0", "u", "1.3*u", {1.5, 2});
  const ProfileJet p = X.profile_jet_at(1.7);
  ASSERT_GT(p.x.d * p.x.d + p.z.d * p.z.d, p.w.d * p.w.d);
  EXPECT_EQ(frame(X, 1.7, 0).epsilon, 1);
}

TEST(Frames, VanishingMeridianSpeedIsDegenerate) {
  EXPECT_THROW(make(HelicoidalKind::I, 0.5, "1", "0", "0", "0", {1, 2}), Error);
}

TEST(SecondForm, VanishingCoefficients) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 5; ++i) {
    const HelicoidalSurface X1 = random_profile(HelicoidalKind::I, rng).surface();
    EXPECT_NEAR(second_fundamental(X1, 1.4, 0.3).b1_12, 0, 1e-12);
    const HelicoidalSurface X3 = random_profile(HelicoidalKind::III, rng).surface();
    const Forms2 b = second_fundamental(X3, 1.4, 0.3);
    EXPECT_NEAR(b.b1_12, 0, 1e-12);
    EXPECT_NEAR(b.b1_22, 0, 1e-12);
  }
}

TEST(SecondForm, GenericMatchesClosedTypeTwoA) {
  std::mt19937_64 rng(14);
  const HelicoidalSurface X = random_profile(HelicoidalKind::IIa, rng).surface();
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const double u = 1 + i / 49.0, v = -1 + 2 * ((i * 7) % 50) / 49.0;
    const Forms2 g = second_fundamental(X, u, v), c = closed_second_fundamental(X, u);
    for (double d : {g.b1_11 - c.b1_11, g.b1_12 - c.b1_12, g.b1_22 - c.b1_22, g.b2_11 - c.b2_11, g.b2_12 - c.b2_12,
                     g.b2_22 - c.b2_22})
      worst = std::fmax(worst, std::fabs(d));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(MeanCurvature, ExampleOneFamilyIsMinimal) {
  const ExampleSetup e = example_setup(1);
  const auto [H1, H2] = mean_curvature(e.pair.helicoidal, 1.5, 1);
  EXPECT_LT(std::fabs(H1), 1e-6);
  EXPECT_LT(std::fabs(H2), 1e-6);
}

TEST(MeanCurvature, GenericMatchesClosedTypeOne) {
  std::mt19937_64 rng(15);
  const HelicoidalSurface X = random_profile(HelicoidalKind::I, rng).surface();
  for (int i = 0; i < 50; ++i) {
    const double u = 1 + i / 49.0, v = -1 + 2 * ((i * 13) % 50) / 49.0;
    const auto [h1, h2] = mean_curvature(X, u, v);
    const auto [c1, c2] = closed_mean_curvature(X, u);
    const double scale = std::hypot(c1, c2);
    EXPECT_LT(std::hypot(h1 - c1, h2 - c2), 1e-6 * scale);
  }
}

TEST(GaussCurvature, DegenerateInputIsRejectedOrFinite) {
  try {
    const HelicoidalSurface X = make(HelicoidalKind::I, 0.5, "1.2", "0", "u", "2*u^2", {1, 2});
    EXPECT_TRUE(std::isfinite(gauss_curvature(X, 1.5, 0)));
  } catch (const Error&) {
    SUCCEED();
  }
}

TEST(GaussMap, UnitTimelikeBivector) {
  std::mt19937_64 rng(16);
  for (HelicoidalKind k : kinds)
    for (int i = 0; i < 5; ++i) {
      const HelicoidalSurface X = random_profile(k, rng).surface();
      const Bivector6 nu = gauss_map(X, 1.25, -0.5);
      EXPECT_NEAR(inner6(nu, nu), -1, 1e-9);
      EXPECT_LT(max_abs_diff(nu, closed_gauss_map(X, 1.25, -0.5)), 1e-9);
    }
}

TEST(Fibers, ExampleOneCircleRadius) {
  const ExampleSetup e = example_setup(1);
  const FiberClass c = classify_fiber(e.pair.rotational, 1.5);
  EXPECT_EQ(c.tag, FiberTag::EuclideanCircle);
  EXPECT_NEAR(c.scale, std::sqrt(1.25), 1e-12);
}

TEST(Fibers, PerKind) {
  EXPECT_EQ(classify_fiber(example_setup(2).pair.rotational, 3).tag, FiberTag::SpacelikeHyperbola);
  EXPECT_EQ(classify_fiber(example_setup(3).pair.rotational, 3).tag, FiberTag::TimelikeHyperbola);
  EXPECT_EQ(classify_fiber(example_setup(4).pair.rotational, 2).tag, FiberTag::SpacelikeParabola);
}
