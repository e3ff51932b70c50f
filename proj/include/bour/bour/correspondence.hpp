#pragma once
#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bour/errors.hpp"
#include "bour/numerics/cumulative.hpp"
#include "bour/numerics/jet.hpp"
#include "bour/surfaces/helicoidal.hpp"
#include "bour/surfaces/rotational.hpp"

namespace bour {

enum class Branch { R1_1, R1_2, R1_3, R2a_1, R2a_2, R2b_1, R2b_2, R2b_3, R3 };

inline constexpr Branch all_branches[] = {Branch::R1_1,  Branch::R1_2,  Branch::R1_3,  Branch::R2a_1, Branch::R2a_2,
                                          Branch::R2b_1, Branch::R2b_2, Branch::R2b_3, Branch::R3};

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::R1_1: return "R1_1";
    case Branch::R1_2: return "R1_2";
    case Branch::R1_3: return "R1_3";
    case Branch::R2a_1: return "R2a_1";
    case Branch::R2a_2: return "R2a_2";
    case Branch::R2b_1: return "R2b_1";
    case Branch::R2b_2: return "R2b_2";
    case Branch::R2b_3: return "R2b_3";
    default: return "R3";
  }
}

inline Branch parse_branch(const std::string& s) {
  for (Branch b : all_branches)
    if (s == to_string(b)) return b;
  throw InvalidArgument("unknown branch '" + s + "'");
}

inline HelicoidalKind kind_of(Branch b) {
  switch (b) {
    case Branch::R1_1:
    case Branch::R1_2:
    case Branch::R1_3: return HelicoidalKind::I;
    case Branch::R2a_1:
    case Branch::R2a_2: return HelicoidalKind::IIa;
    case Branch::R2b_1:
    case Branch::R2b_2:
    case Branch::R2b_3: return HelicoidalKind::IIb;
    default: return HelicoidalKind::III;
  }
}

inline RotationalKind rotational_kind_of(Branch b) {
  switch (b) {
    case Branch::R1_1:
    case Branch::R2a_1:
    case Branch::R2b_1: return RotationalKind::EllipticR1;
    case Branch::R1_2:
    case Branch::R2a_2:
    case Branch::R2b_2: return RotationalKind::HyperbolicR2a;
    case Branch::R1_3:
    case Branch::R2b_3: return RotationalKind::HyperbolicR2b;
    default: return RotationalKind::ParabolicR3;
  }
}

enum class ConstraintForm { Difference, Sum, Parabolic };  // a^2 - b^2, a^2 + b^2, a^2 - 2b

inline ConstraintForm constraint_form(Branch b) {
  switch (b) {
    case Branch::R1_1:
    case Branch::R2a_1:
    case Branch::R2b_1: return ConstraintForm::Difference;
    case Branch::R3: return ConstraintForm::Parabolic;
    default: return ConstraintForm::Sum;
  }
}

// Profile values and slopes: for T = Dual each entry also carries its u-derivative.
template <class T>
struct ProfileValues {
  T x, x1, y, y1, z, z1, w, w1;
};

inline ProfileValues<double> values_of(const ProfileJet& p) {
  return {p.x.v, p.x.d, p.y.v, p.y.d, p.z.v, p.z.d, p.w.v, p.w.d};
}

inline ProfileValues<Dual> duals_of(const ProfileJet& p) {
  return {{p.x.v, p.x.d}, {p.x.d, p.x.dd}, {p.y.v, p.y.d}, {p.y.d, p.y.dd},
          {p.z.v, p.z.d}, {p.z.d, p.z.dd}, {p.w.v, p.w.d}, {p.w.d, p.w.dd}};
}

namespace branch_math {

inline void require_nonzero(double v, const char* what) {
  if (v == 0 || !std::isfinite(v)) throw DomainError(std::string("vanishing denominator: ") + what);
}

// Right-hand side of the branch's a/b constraint.
template <class T>
T constraint_rhs(Branch br, double lam, const ProfileValues<T>& p) {
  const double l2 = lam * lam;
  const T &x = p.x, &x1 = p.x1, &y1 = p.y1, &z = p.z, &z1 = p.z1, &w = p.w, &w1 = p.w1;
  switch (br) {
    case Branch::R1_1:
      return (x * x * (z1 * z1 - w1 * w1) - l2 * (x1 * x1 + z1 * z1)) / (x * x * x1 * x1);
    case Branch::R1_2:
      return ((x * x - l2) * (x1 * x1 + z1 * z1) + x * x * (x1 * x1 - w1 * w1)) / (x * x * x1 * x1);
    case Branch::R1_3:
      return ((l2 - x * x) * (x1 * x1 + z1 * z1) - x * x * (x1 * x1 - w1 * w1)) / (x * x * x1 * x1);
    case Branch::R2a_1:
      return (l2 * (y1 * y1 - w1 * w1) + w * w * (x1 * x1 + y1 * y1 - 2.0 * w1 * w1)) / (w * w * w1 * w1);
    case Branch::R2a_2:
      return (w * w * (x1 * x1 + y1 * y1) + l2 * (y1 * y1 - w1 * w1)) / (w * w * w1 * w1);
    case Branch::R2b_1:
      return (l2 * (y1 * y1 + z1 * z1) - z * z * (x1 * x1 + y1 * y1 + 2.0 * z1 * z1)) / (z * z * z1 * z1);
    case Branch::R2b_2:
      return (l2 * (y1 * y1 + z1 * z1) - z * z * (x1 * x1 + y1 * y1)) / (z * z * z1 * z1);
    case Branch::R2b_3:
      return (z * z * (x1 * x1 + y1 * y1) - l2 * (y1 * y1 + z1 * z1)) / (z * z * z1 * z1);
    case Branch::R3:
      return (x1 * x1 - 2.0 * w1 * z1) / (w1 * w1) - l2 / (2.0 * w * w);
  }
  return T(0.0);
}

inline void check_denominators(Branch br, const ProfileValues<double>& p) {
  switch (kind_of(br)) {
    case HelicoidalKind::I: require_nonzero(p.x * p.x1, "x x'"); break;
    case HelicoidalKind::IIa: require_nonzero(p.w * p.w1, "w w'"); break;
    case HelicoidalKind::IIb: require_nonzero(p.z * p.z1, "z z'"); break;
    case HelicoidalKind::III: require_nonzero(p.w * p.w1, "w w'"); break;
  }
}

// d(offset)/du, shared by all branches of a kind (type III has a closed form)
template <class T>
T offset_integrand(HelicoidalKind kind, double lam, const ProfileValues<T>& p) {
  const double l2 = lam * lam;
  switch (kind) {
    case HelicoidalKind::I: return -lam * p.w1 / (p.x * p.x - l2);
    case HelicoidalKind::IIa: return lam * p.x1 / (l2 + p.w * p.w);
    case HelicoidalKind::IIb: return lam * p.x1 / (l2 - p.z * p.z);
    default: return -lam * p.w1 / (2.0 * p.w * p.w);
  }
}

// g with partner components integral(a g) and integral(b g)
template <class T>
T partner_factor(Branch br, double lam, const ProfileValues<T>& p) {
  using std::sqrt;
  const double l2 = lam * lam;
  switch (br) {
    case Branch::R1_1:
    case Branch::R1_2: return p.x * p.x1 / sqrt(p.x * p.x - l2);
    case Branch::R1_3: return -(p.x * p.x1) / sqrt(l2 - p.x * p.x);
    case Branch::R2a_1:
    case Branch::R2a_2: return p.w * p.w1 / sqrt(l2 + p.w * p.w);
    case Branch::R2b_1:
    case Branch::R2b_2: return -(p.z * p.z1) / sqrt(l2 - p.z * p.z);
    case Branch::R2b_3: return p.z * p.z1 / sqrt(p.z * p.z - l2);
    default: return p.w1;
  }
}

// radius of the partner fiber with two derivatives
inline Jet2 radius(Branch br, double lam, const ProfileJet& p) {
  const double l2 = lam * lam;
  switch (br) {
    case Branch::R1_1:
    case Branch::R1_2: return sqrt(p.x * p.x - l2);
    case Branch::R1_3: return sqrt(l2 - p.x * p.x);
    case Branch::R2a_1:
    case Branch::R2a_2: return sqrt(p.w * p.w + l2);
    case Branch::R2b_1:
    case Branch::R2b_2: return sqrt(l2 - p.z * p.z);
    case Branch::R2b_3: return sqrt(p.z * p.z - l2);
    default: return p.w;
  }
}

// signed quantity that must stay positive on the branch domain (none for IIa, III)
inline std::optional<double> sign_condition(Branch br, double lam, const ProfileJet& p) {
  const double l2 = lam * lam;
  switch (br) {
    case Branch::R1_1:
    case Branch::R1_2: return p.x.v * p.x.v - l2;
    case Branch::R1_3: return l2 - p.x.v * p.x.v;
    case Branch::R2b_1:
    case Branch::R2b_2: return l2 - p.z.v * p.z.v;
    case Branch::R2b_3: return p.z.v * p.z.v - l2;
    default: return std::nullopt;
  }
}

}  // namespace branch_math

struct BourFunctions {
  ScalarFn a = ScalarFn::constant(0);
  ScalarFn b = ScalarFn::constant(0);
};

// v-bar = v + offset(u), u-bar = u; the Jacobian is identically 1.
struct CoordChange {
  ScalarFn offset;
  std::vector<Interval> pieces;

  double vbar(double u, double v) const { return v + offset(u); }
  std::pair<double, double> mapped(double u, double v) const { return {u, vbar(u, v)}; }
  static constexpr double jacobian() { return 1.0; }
};

// One function per piece; u outside every piece raises DomainError.
inline ScalarFn piecewise(std::vector<Interval> pieces, std::vector<ScalarFn> fns) {
  if (fns.size() == 1) return fns.front();
  auto data = std::make_shared<const std::pair<std::vector<Interval>, std::vector<ScalarFn>>>(std::move(pieces), std::move(fns));
  auto pick = [data](double u) -> const ScalarFn& {
    const auto& [iv, fs] = *data;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      const double slack = 1e-12 * (1 + std::fabs(u));
      if (u >= iv[i].lo - slack && u <= iv[i].hi + slack) return fs[i];
    }
    throw DomainError("u=" + std::to_string(u) + " outside every domain piece");
  };
  Interval hull{data->first.front().lo, data->first.back().hi};
  return ScalarFn([pick](double u) { return pick(u)(u); }, [pick](double u) { return derivative(pick(u), u, 1); },
                  [pick](double u) { return derivative(pick(u), u, 2); }, hull);
}

struct BuildOptions {
  double clip = default_clip;
  double tol = 1e-10;
  bool check_constraint = true;
  double constraint_tol = 1e-6;
};

struct SurfacePair {
  Branch branch;
  HelicoidalSurface helicoidal;
  RotationalSurface rotational;
  CoordChange change;
  BourFunctions ab;
  Domain domain;  // clipped u-pieces and v-range shared by both surfaces

  // the rotational partner in the helicoidal surface's (u, v)
  Pullback<RotationalSurface> rotational_pulled() const { return {rotational, change.offset}; }
};

namespace detail {

inline void require_bour_inputs(const HelicoidalSurface& X, Branch br) {
  if (!(X.lambda() > 0)) throw InvalidArgument("Bour correspondence requires lambda > 0");
  if (X.kind() != kind_of(br))
    throw InvalidArgument(std::string("branch ") + to_string(br) + " does not belong to kind " + to_string(X.kind()));
}

// u samples spread over the pieces, count per piece proportional to its length
inline std::vector<double> sample_pieces(const std::vector<Interval>& pieces, int total) {
  double L = 0;
  for (const auto& p : pieces) L += p.length();
  std::vector<double> us;
  for (const auto& p : pieces) {
    const int n = std::max(2, int(std::lround(total * p.length() / L)));
    for (int i = 0; i < n; ++i) us.push_back(i + 1 == n ? p.hi : p.lo + p.length() * i / (n - 1));
  }
  return us;
}

inline ScalarFn profile_map(const HelicoidalSurface& X, Interval iv, std::function<Dual(const ProfileJet&)> g) {
  const ProfileCurve prof = X.profile();
  auto gp = std::make_shared<std::function<Dual(const ProfileJet&)>>(std::move(g));
  return ScalarFn([prof, gp](double u) { return (*gp)(profile_jet(prof, u)).v; },
                  [prof, gp](double u) { return (*gp)(profile_jet(prof, u)).d; }, {}, iv);
}

}  // namespace detail

// Sub-pieces of X's domain on which the branch sign condition holds, clipped
// by `clip` at its zeros.
inline std::vector<Interval> branch_pieces(const HelicoidalSurface& X, Branch br, double clip = default_clip) {
  detail::require_bour_inputs(X, br);
  const double lam = X.lambda();
  std::vector<Interval> out;
  for (const Interval& piece : X.domain().pieces) {
    const ProfileJet p0 = X.profile_jet_at(piece.mid());
    if (!branch_math::sign_condition(br, lam, p0)) {
      out.push_back(piece);
      continue;
    }
    auto g = [&](double u) { return *branch_math::sign_condition(br, lam, X.profile_jet_at(u)); };
    for (const Interval& sub : split_at_zeros(g, piece, clip, "branch sign condition")) {
      if (!(g(sub.mid()) > 0))
        throw BranchDomainError(std::string("branch ") + to_string(br) + " sign condition fails on [" +
                                std::to_string(sub.lo) + ", " + std::to_string(sub.hi) + "]");
      out.push_back(sub);
    }
  }
  return out;
}

inline double ab_constraint_residual(const HelicoidalSurface& X, Branch br, const BourFunctions& ab, double u) {
  detail::require_bour_inputs(X, br);
  const ProfileValues<double> p = values_of(X.profile_jet_at(u));
  branch_math::check_denominators(br, p);
  const double a = ab.a(u), b = ab.b(u);
  double lhs = 0;
  switch (constraint_form(br)) {
    case ConstraintForm::Difference: lhs = a * a - b * b; break;
    case ConstraintForm::Sum: lhs = a * a + b * b; break;
    case ConstraintForm::Parabolic: lhs = a * a - 2 * b; break;
  }
  return lhs - branch_math::constraint_rhs(br, X.lambda(), p);
}

inline double constraint_rhs(const HelicoidalSurface& X, Branch br, double u) {
  detail::require_bour_inputs(X, br);
  const ProfileValues<double> p = values_of(X.profile_jet_at(u));
  branch_math::check_denominators(br, p);
  return branch_math::constraint_rhs(br, X.lambda(), p);
}

// Offset anchored at each piece midpoint with the given value (default 0).
inline CoordChange reparametrize(const HelicoidalSurface& X, Branch br, const std::vector<Interval>& pieces,
                                 const std::vector<double>& anchors = {}, double tol = 1e-10) {
  detail::require_bour_inputs(X, br);
  const double lam = X.lambda();
  const HelicoidalKind kind = X.kind();
  if (kind == HelicoidalKind::III) {
    const ScalarFn w = X.profile().w;
    auto psi = ScalarFn([w, lam](double u) { return lam / (2 * w(u)); },
                        [w, lam](double u) {
                          const Jet2 r = lam / (2.0 * jet(w, u));
                          return r.d;
                        },
                        [w, lam](double u) {
                          const Jet2 r = lam / (2.0 * jet(w, u));
                          return r.dd;
                        },
                        Interval{pieces.front().lo, pieces.back().hi});
    return {psi, pieces};
  }
  std::vector<ScalarFn> parts;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Interval iv = pieces[i];
    ScalarFn f = detail::profile_map(X, iv, [kind, lam](const ProfileJet& p) {
      return branch_math::offset_integrand(kind, lam, duals_of(p));
    });
    const double c = i < anchors.size() ? anchors[i] : 0.0;
    ScalarFn F = cumulative(f, iv.mid(), iv, tol).as_fn();
    if (c != 0) {
      F = ScalarFn([F, c](double u) { return F(u) + c; }, [F](double u) { return derivative(F, u, 1); },
                   [F](double u) { return derivative(F, u, 2); }, iv);
    }
    parts.push_back(F);
  }
  return {piecewise(pieces, parts), pieces};
}

inline CoordChange reparametrize(const HelicoidalSurface& X, Branch br, double clip = default_clip) {
  return reparametrize(X, br, branch_pieces(X, br, clip));
}

inline double max_constraint_residual(const HelicoidalSurface& X, Branch br, const BourFunctions& ab,
                                      const std::vector<Interval>& pieces, int samples = 65) {
  double worst = 0;
  for (double u : detail::sample_pieces(pieces, samples))
    worst = std::fmax(worst, std::fabs(ab_constraint_residual(X, br, ab, u)));
  return worst;
}

namespace detail {

inline SurfacePair assemble(const HelicoidalSurface& X, Branch br, const BourFunctions& ab,
                            const std::vector<Interval>& pieces, CoordChange change, const BuildOptions& opt,
                            std::optional<std::pair<ScalarFn, ScalarFn>> closed_ab_components = std::nullopt) {
  const double lam = X.lambda();
  std::vector<ScalarFn> A, B;
  if (closed_ab_components) {
    A.push_back(closed_ab_components->first);
    B.push_back(closed_ab_components->second);
  } else {
    for (const Interval& iv : pieces) {
      const ProfileCurve prof = X.profile();
      auto make = [&](const ScalarFn& coef) {
        auto f = ScalarFn(
            [prof, coef, br, lam](double u) {
              return coef(u) * branch_math::partner_factor(br, lam, values_of(profile_jet(prof, u)));
            },
            [prof, coef, br, lam](double u) {
              const Dual g = branch_math::partner_factor(br, lam, duals_of(profile_jet(prof, u)));
              return (dual(coef, u) * g).d;
            },
            {}, iv);
        return cumulative(f, iv.mid(), iv, opt.tol).as_fn();
      };
      A.push_back(make(ab.a));
      B.push_back(make(ab.b));
    }
  }
  ScalarFn Aall = piecewise(pieces, A), Ball = piecewise(pieces, B);
  const ProfileCurve prof = X.profile();
  ScalarFn rad = ScalarFn::from_jet(
      [prof, br, lam](const Jet2& u) {
        const Jet2 r = branch_math::radius(br, lam, profile_jet(prof, u.v));
        return Jet2{r.v, r.d * u.d, r.dd * u.d * u.d + r.d * u.dd};
      },
      Interval{pieces.front().lo, pieces.back().hi});

  RotationalComponents c;
  c.interval = {pieces.front().lo, pieces.back().hi};
  switch (rotational_kind_of(br)) {
    case RotationalKind::EllipticR1: c.n = rad, c.s = Aall, c.r = Ball; break;
    case RotationalKind::HyperbolicR2a: c.n = Aall, c.p = Ball, c.r = rad; break;
    case RotationalKind::HyperbolicR2b: c.n = Aall, c.p = Ball, c.s = rad; break;
    case RotationalKind::ParabolicR3: c.n = Aall, c.s = Ball, c.r = rad; break;
  }
  RotationalSurface R(rotational_kind_of(br), std::move(c), pieces);
  Domain dom{pieces, X.domain().v};
  return {br, X, std::move(R), std::move(change), ab, std::move(dom)};
}

}  // namespace detail

inline SurfacePair partner(const HelicoidalSurface& X, Branch br, const BourFunctions& ab, const BuildOptions& opt = {}) {
  detail::require_bour_inputs(X, br);
  const std::vector<Interval> pieces = branch_pieces(X, br, opt.clip);
  if (opt.check_constraint) {
    const double res = max_constraint_residual(X, br, ab, pieces);
    if (!(res <= opt.constraint_tol))
      throw ConstraintError(std::string("a/b violate the ") + to_string(br) + " constraint: max residual " +
                            std::to_string(res));
  }
  CoordChange change = reparametrize(X, br, pieces, {}, opt.tol);
  return detail::assemble(X, br, ab, pieces, std::move(change), opt);
}

// Solve the branch constraint for one of a, b given the other (positive root
// where a square root is taken).
enum class Unknown { A, B };

inline ScalarFn complete_ab(const HelicoidalSurface& X, Branch br, const ScalarFn& given, Unknown solve_for) {
  detail::require_bour_inputs(X, br);
  const ProfileCurve prof = X.profile();
  const double lam = X.lambda();
  const ConstraintForm form = constraint_form(br);
  auto rule = [prof, lam, br, form, given, solve_for](double u) -> Dual {
    const Dual R = branch_math::constraint_rhs(br, lam, duals_of(profile_jet(prof, u)));
    const Dual g = dual(given, u);
    Dual sq;
    switch (form) {
      case ConstraintForm::Difference: sq = solve_for == Unknown::B ? g * g - R : R + g * g; break;
      case ConstraintForm::Sum: sq = R - g * g; break;
      case ConstraintForm::Parabolic:
        if (solve_for == Unknown::B) return (g * g - R) / 2.0;
        sq = R + 2.0 * g;
        break;
    }
    if (!(sq.v >= 0))
      throw ConstraintError("complete_ab: no real solution at u=" + std::to_string(u) + " (radicand " +
                            std::to_string(sq.v) + ")");
    return sqrt(sq);
  };
  return ScalarFn([rule](double u) { return rule(u).v; }, [rule](double u) { return rule(u).d; }, {}, prof.interval);
}

// Type III partner whose Gauss map equals the helicoid's: a = x'/w', b = z'/w' + lambda^2/(4 w^2).
inline SurfacePair same_gauss_partner(const HelicoidalSurface& X, const BuildOptions& opt = {}) {
  if (X.kind() != HelicoidalKind::III) throw InvalidArgument("same_gauss_partner needs a type III surface");
  const ProfileCurve prof = X.profile();
  const double lam = X.lambda();
  auto a = [prof](double u) {
    const ProfileValues<Dual> p = duals_of(profile_jet(prof, u));
    return p.x1 / p.w1;
  };
  auto b = [prof, lam](double u) {
    const ProfileValues<Dual> p = duals_of(profile_jet(prof, u));
    return p.z1 / p.w1 + lam * lam / (4.0 * p.w * p.w);
  };
  BourFunctions ab{ScalarFn([a](double u) { return a(u).v; }, [a](double u) { return a(u).d; }, {}, prof.interval),
                   ScalarFn([b](double u) { return b(u).v; }, [b](double u) { return b(u).d; }, {}, prof.interval)};
  return partner(X, Branch::R3, ab, opt);
}

}  // namespace bour
