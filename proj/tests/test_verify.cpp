#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bour/bour/minimal.hpp"
#include "bour/examples.hpp"
#include "bour/verify.hpp"
#include "support.hpp"

using namespace bour;
using testing_support::expr_fn;

namespace {

const ExampleSetup& ex(int n) {
  static const ExampleSetup e[4] = {example_setup(1), example_setup(2), example_setup(3), example_setup(4)};
  return e[n - 1];
}

Grid grid20(const SurfacePair& p) { return Grid::over(p.domain, 20, 20); }

}  // namespace

TEST(Grid, LinspaceHitsEndpointsExactly) {
  const std::vector<double> s = Grid::linspace({1.32, 1.72}, 7);
  EXPECT_EQ(s.front(), 1.32);
  EXPECT_EQ(s.back(), 1.72);
  EXPECT_THROW(Grid::linspace({0, 1}, 1), InvalidArgument);
}

TEST(Grid, SpreadsOverPieces) {
  const Grid g = Grid::over(ex(4).pair.domain, 20, 5);
  EXPECT_EQ(g.u.size(), 20u);
  for (double u : g.u) EXPECT_GE(std::fabs(u), example4_clip);
}

TEST(Isometry, ExampleOne) { EXPECT_TRUE(check_isometry(ex(1).pair, grid20(ex(1).pair), 1e-6).pass); }

TEST(Isometry, ExampleFourWithGap) {
  const VerificationReport r = check_isometry(ex(4).pair, grid20(ex(4).pair), 1e-6);
  EXPECT_TRUE(r.pass) << r.max_residual;
}

TEST(Isometry, IdentityIsExact) {
  const HelicoidalSurface& X = ex(1).pair.helicoidal;
  const VerificationReport r = check_isometry(X, X, Grid::over(X.domain(), 10, 10), 1e-15);
  EXPECT_EQ(r.max_residual, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Isometry, MonotoneInTolerance) {
  const Grid g = grid20(ex(2).pair);
  bool failed = false;
  for (double tol = 1e-3; tol > 1e-18; tol /= 10) {
    const bool pass = check_isometry(ex(2).pair, g, tol).pass;
    EXPECT_FALSE(failed && pass) << tol;
    failed = failed || !pass;
  }
  EXPECT_TRUE(failed);
}

TEST(GaussMaps, ExampleFourAgreeTightly) {
  EXPECT_LT(compare_gauss_maps(ex(4).pair, grid20(ex(4).pair), 1e-9).max_residual, 1e-9);
}

TEST(GaussMaps, ExampleOneFamily) {
  EXPECT_LT(compare_gauss_maps(ex(1).pair, grid20(ex(1).pair), 1e-6).max_residual, 1e-6);
}

TEST(GaussMaps, TypeTwoANeverEqualBranch) {
  std::mt19937_64 rng(21);
  const testing_support::BranchSample s = testing_support::random_branch_sample(Branch::R2a_1, rng);
  const SurfacePair P = partner(s.profile.surface(), Branch::R2a_1, s.ab);
  const VerificationReport r = compare_gauss_maps(P, grid20(P), 1e-6);
  EXPECT_GT(r.min_residual, 1e-2);
  EXPECT_FALSE(r.pass);
}

TEST(Minimal, ExampleTwoHelicoid) { EXPECT_TRUE(check_minimal(ex(2).pair.helicoidal, grid20(ex(2).pair), 1e-6).pass); }

TEST(Minimal, ExampleThreePartner) {
  EXPECT_TRUE(check_minimal(ex(3).pair.rotational_pulled(), grid20(ex(3).pair), 1e-6).pass);
}

TEST(Minimal, GenericTypeOneFails) {
  ProfileCurve p;
  p.interval = {1, 2};
  p.x = expr_fn("u", p.interval);
  p.z = expr_fn("u", p.interval);
  p.w = expr_fn("u^2", p.interval);
  SurfaceOptions o;
  o.v = {0, 1};
  const HelicoidalSurface X(HelicoidalKind::I, p, 0.5, o);
  const VerificationReport r = check_minimal(X, Grid::over(X.domain(), 10, 10), 1e-6);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_residual, 1e-3);
}

TEST(Frames, RandomProfilesAllKinds) {
  std::mt19937_64 rng(22);
  for (HelicoidalKind k : {HelicoidalKind::I, HelicoidalKind::IIa, HelicoidalKind::IIb, HelicoidalKind::III}) {
    const HelicoidalSurface X = testing_support::random_profile(k, rng).surface();
    EXPECT_TRUE(check_frames(X, Grid::over(X.domain(), 8, 8), 1e-9).pass) << to_string(k);
  }
}

TEST(Frames, PerturbedNormalFails) {
  const HelicoidalSurface& X = ex(1).pair.helicoidal;
  const VerificationReport r = check_frames(
      [&X](double u, double v) {
        FrameField f = frame(X, u, v);
        f.N1 = f.N1 * (1 + 1e-3);
        return f;
      },
      Grid::over(X.domain(), 8, 8), 1e-9);
  EXPECT_FALSE(r.pass);
}

TEST(Frames, ExampleFour) { EXPECT_TRUE(check_frames(ex(4).pair.helicoidal, grid20(ex(4).pair), 1e-9).pass); }

TEST(Curvature, ExampleOnePair) { EXPECT_TRUE(check_curvature_match(ex(1).pair, grid20(ex(1).pair), 1e-4).pass); }

TEST(Curvature, ExampleFourPair) { EXPECT_TRUE(check_curvature_match(ex(4).pair, grid20(ex(4).pair), 1e-4).pass); }

TEST(Curvature, ExampleOnePointValue) {
  const SurfacePair& P = ex(1).pair;
  const auto [ub, vb] = P.change.mapped(1.5, 0);
  EXPECT_NEAR(gauss_curvature(P.helicoidal, 1.5, 0), gauss_curvature(P.rotational, ub, vb), 1e-4);
}

TEST(Curvature, MismatchedFamilyConstantFails) {
  const ScalarFn f = expr_fn("u", {1.32, 1.72});
  const MinimalFamily a = minimal_family(HelicoidalKind::I, Branch::R1_1, {1, 0, 0, -0.5, 0, 1}, f, {}, {0, 6});
  const MinimalFamily b = minimal_family(HelicoidalKind::I, Branch::R1_1, {1, 0, 0, -0.4, 0, 1}, f, {}, {0, 6});
  const CoordChange& ch = a.pair.change;
  const VerificationReport r = check_curvature_match(
      a.pair.helicoidal, b.pair.rotational, [&ch](double u, double v) { return ch.mapped(u, v); },
      Grid::over(a.pair.domain, 10, 10), 1e-4);
  EXPECT_FALSE(r.pass);
}

TEST(Report, DegeneratePointsAreExcluded) {
  const Grid g = Grid::uniform({0, 1}, {0, 1}, 3, 3);
  const VerificationReport r = detail::run_grid("probe", g, 1, [](double u, double) -> double {
    if (u == 0.5) throw DegenerateFrameError("probe");
    return 0.25;
  });
  EXPECT_EQ(r.excluded_points.size(), 3u);
  EXPECT_TRUE(std::isnan(r.residuals[3]));
  EXPECT_TRUE(r.pass);
}
