#pragma once
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "bour/bour/correspondence.hpp"
#include "bour/numerics/expr.hpp"
#include "bour/surfaces/helicoidal.hpp"

namespace testing_support {

using namespace bour;

inline std::string num(double c) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.6f)", c);
  return buf;
}

inline ScalarFn expr_fn(const std::string& s, Interval iv) {
  const ExprAst a = parse_expr(s);
  if (a.is_constant()) return ScalarFn::constant(a(0.0)).restricted(iv);
  return a.to_scalar_fn(iv);
}

struct RandomProfile {
  HelicoidalKind kind;
  double lambda;
  std::string x, y, z, w;
  Interval u{1, 2}, v{-1, 1};

  HelicoidalSurface surface(bool validate = true) const {
    ProfileCurve p;
    p.interval = u;
    p.x = expr_fn(x, u);
    p.y = expr_fn(y, u);
    p.z = expr_fn(z, u);
    p.w = expr_fn(w, u);
    SurfaceOptions opt;
    opt.v = v;
    opt.validate = validate;
    return HelicoidalSurface(kind, p, lambda, opt);
  }
  std::string describe() const {
    return std::string(to_string(kind)) + " lambda=" + std::to_string(lambda) + " x=" + x + " y=" + y + " z=" + z +
           " w=" + w;
  }
};

// a + b u + c sin(d u) + e u^2
inline std::string random_component(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> c(-scale, scale), f(0.5, 2.0);
  return num(c(rng)) + "+" + num(c(rng)) + "*u+" + num(0.5 * c(rng)) + "*sin(" + num(f(rng)) + "*u)+" +
         num(0.3 * c(rng)) + "*u^2";
}

using ProfilePredicate = std::function<bool(const ProfileJet&, double)>;

// W < 0 with margin, no zero of the kind's pivot component, regular frames,
// and an optional extra predicate on the profile jet.
inline bool admissible(const RandomProfile& r, const ProfilePredicate& extra) {
  try {
    const HelicoidalSurface X = r.surface(false);
    if (X.domain().pieces.size() != 1) return false;
    for (int i = 0; i <= 40; ++i) {
      const double u = r.u.lo + r.u.length() * i / 40;
      const ProfileJet p = X.profile_jet_at(u);
      const double W = helicoidal::closed_W(r.kind, r.lambda, p);
      double pivot = 0, speed = 0;
      switch (r.kind) {
        case HelicoidalKind::I: pivot = p.x.v; speed = p.x.d * p.x.d + p.z.d * p.z.d; break;
        case HelicoidalKind::IIa: pivot = p.w.v; speed = p.w.d * p.w.d + p.y.d * p.y.d; break;
        case HelicoidalKind::IIb: pivot = p.z.v; speed = p.y.d * p.y.d + p.z.d * p.z.d; break;
        case HelicoidalKind::III: pivot = p.w.v; speed = p.w.d * p.w.d; break;
      }
      if (!(W < -0.05 && std::fabs(pivot) > 0.1 && speed > 0.05 && (!extra || extra(p, r.lambda)))) return false;
    }
    r.surface();
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline RandomProfile random_profile(HelicoidalKind kind, std::mt19937_64& rng, const ProfilePredicate& extra = {}) {
  std::uniform_real_distribution<double> lam(0.3, 1.5);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    RandomProfile r{kind, lam(rng), "0", "0", "0", "0"};
    switch (kind) {
      case HelicoidalKind::I:
        r.x = random_component(rng, 2);
        r.z = random_component(rng, 1);
        r.w = random_component(rng, 3);
        break;
      case HelicoidalKind::IIa:
        r.x = random_component(rng, 1);
        r.y = random_component(rng, 1);
        r.w = random_component(rng, 3);
        break;
      case HelicoidalKind::IIb:
        r.x = random_component(rng, 3);
        r.y = random_component(rng, 1);
        r.z = random_component(rng, 1);
        break;
      case HelicoidalKind::III:
        r.x = random_component(rng, 1);
        r.z = random_component(rng, 2);
        r.w = random_component(rng, 2);
        break;
    }
    if (admissible(r, extra)) return r;
  }
  throw std::runtime_error("random_profile: no admissible sample");
}

// R2b_2 lives in a thin band 0 < -W < z^2 z'^2 (1 - a^2); x is linear with
// its slope set mid-band at the centre of the interval.
inline RandomProfile random_r2b2_profile(std::mt19937_64& rng, double a, const ProfilePredicate& extra) {
  std::uniform_real_distribution<double> lam(1.5, 2.5), zs(0.8, 1.5), zc(0.55, 0.75), c(-1, 1), wig(-0.05, 0.05);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    RandomProfile r{HelicoidalKind::IIb, lam(rng), "0", "0", "0", "0"};
    r.u = {1, 1.4};
    const double z0 = zc(rng) * r.lambda, z1 = zs(rng) * (c(rng) < 0 ? -1 : 1), y1 = 0.5 * c(rng);
    const double um = r.u.mid();
    r.z = num(z0 - z1 * um) + "+" + num(z1) + "*u+" + num(wig(rng)) + "*sin(u)";
    r.y = num(c(rng)) + "+" + num(y1) + "*u+" + num(wig(rng)) + "*u^2";
    const double band = z0 * z0 * z1 * z1 * (1 - a * a);
    const double slope2 = ((r.lambda * r.lambda - z0 * z0) * (y1 * y1 + z1 * z1) + 0.5 * band) / (z0 * z0);
    r.x = num(c(rng)) + "+" + num(std::sqrt(slope2)) + "*u";
    if (admissible(r, extra)) return r;
  }
  throw std::runtime_error("random_r2b2_profile: no admissible sample");
}

// Generic profile for a branch together with (a, b) solving its constraint.
struct BranchSample {
  RandomProfile profile;
  BourFunctions ab;
};

inline BranchSample random_branch_sample(Branch br, std::mt19937_64& rng) {
  const HelicoidalKind kind = kind_of(br);
  constexpr double given = 0.3;
  const bool sum = constraint_form(br) == ConstraintForm::Sum;
  auto extra = [br, sum](const ProfileJet& p, double lam) {
    const ProfileValues<double> v = values_of(p);
    const auto s = branch_math::sign_condition(br, lam, p);
    if (s && !(*s > 0.05)) return false;
    double den = 0;
    switch (kind_of(br)) {
      case HelicoidalKind::I: den = v.x * v.x1; break;
      case HelicoidalKind::IIa: den = v.w * v.w1; break;
      case HelicoidalKind::IIb: den = v.z * v.z1; break;
      case HelicoidalKind::III: den = v.w * v.w1; break;
    }
    if (!(std::fabs(den) > 0.1)) return false;
    const double R = branch_math::constraint_rhs(br, lam, v);
    if (sum) return R > given * given + 0.05;
    return constraint_form(br) != ConstraintForm::Difference || R + (given + 3.0) * (given + 3.0) > 0.05;
  };
  const RandomProfile r = br == Branch::R2b_2 ? random_r2b2_profile(rng, given, extra) : random_profile(kind, rng, extra);
  const HelicoidalSurface X = r.surface();
  const ScalarFn g = ScalarFn::constant(given).restricted(r.u);
  BourFunctions ab;
  if (sum || constraint_form(br) == ConstraintForm::Parabolic) {
    ab.a = g;
    ab.b = complete_ab(X, br, g, Unknown::B);
  } else {
    ab.b = ScalarFn::constant(given + 3.0).restricted(r.u);
    ab.a = complete_ab(X, br, ab.b, Unknown::A);
  }
  return {r, ab};
}

}  // namespace testing_support
