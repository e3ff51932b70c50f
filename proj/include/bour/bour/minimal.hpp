#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bour/bour/correspondence.hpp"
#include "bour/errors.hpp"
#include "bour/numerics/cumulative.hpp"

// Hyperplanar minimal helicoidal surfaces whose Gauss map equals that of
// their rotational partner, in closed form.

namespace bour {

struct MinimalFamilyParams {
  double lambda = 1;
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  int sign = 1;
};

enum class GaussVerdict { AlwaysEqualOnMinimalFamily, AlwaysEqual, NeverEqual };

inline const char* to_string(GaussVerdict g) {
  switch (g) {
    case GaussVerdict::AlwaysEqualOnMinimalFamily: return "AlwaysEqualOnMinimalFamily";
    case GaussVerdict::AlwaysEqual: return "AlwaysEqual";
    default: return "NeverEqual";
  }
}

inline GaussVerdict gauss_map_verdict(HelicoidalKind kind, Branch br) {
  if (kind_of(br) != kind)
    throw InvalidArgument(std::string("branch ") + to_string(br) + " does not belong to kind " + to_string(kind));
  switch (br) {
    case Branch::R1_1:
    case Branch::R2a_2:
    case Branch::R2b_2:
    case Branch::R2b_3: return GaussVerdict::AlwaysEqualOnMinimalFamily;
    case Branch::R3: return GaussVerdict::AlwaysEqual;
    default: return GaussVerdict::NeverEqual;
  }
}

inline bool has_minimal_family(Branch br) {
  return br == Branch::R1_1 || br == Branch::R2a_2 || br == Branch::R2b_2 || br == Branch::R2b_3;
}

namespace detail {

inline void require_family(HelicoidalKind kind, Branch br) {
  if (kind == HelicoidalKind::III || br == Branch::R3)
    throw InvalidArgument("type III pairs have equal Gauss maps without a minimality constraint; use same_gauss_partner");
  if (kind_of(br) != kind)
    throw InvalidArgument(std::string("branch ") + to_string(br) + " does not belong to kind " + to_string(kind));
  if (!has_minimal_family(br)) throw InvalidArgument(std::string("branch ") + to_string(br) + " has no minimal family");
}

// ScalarFn u -> g(jet of f at u)
inline ScalarFn compose(const ScalarFn& f, std::function<Jet2(const Jet2&)> g, Interval iv) {
  auto gp = std::make_shared<std::function<Jet2(const Jet2&)>>(std::move(g));
  auto at = [f, gp](double u) { return (*gp)(jet(f, u)); };
  return ScalarFn([at](double u) { return at(u).v; }, [at](double u) { return at(u).d; },
                  [at](double u) { return at(u).dd; }, iv);
}

}  // namespace detail

// b^2 (type I) or a^2 (IIa, IIb) solving the branch's Bernoulli equation,
// as a function of u through the free profile function.
inline ScalarFn bernoulli_closed_form(HelicoidalKind kind, Branch br, double c3, double lam, const ScalarFn& free) {
  detail::require_family(kind, br);
  return detail::compose(
      free,
      [br, c3, lam](const Jet2& f) {
        const double l2 = lam * lam;
        Jet2 den;
        switch (br) {
          case Branch::R1_1: den = 1.0 + c3 * (f * f - l2); break;
          case Branch::R2a_2: den = 1.0 + c3 * (f * f + l2); break;
          case Branch::R2b_2: den = 1.0 + c3 * (l2 - f * f); break;
          default: den = c3 * (f * f - l2) - 1.0; break;
        }
        if (!(den.v > 0))
          throw DomainError("Bernoulli solution: denominator " + std::to_string(den.v) + " <= 0 at free value " +
                            std::to_string(f.v));
        return 1.0 / den;
      },
      free.interval());
}

// y' for the Bernoulli equation in y = b (type I) or y = a (IIa, IIb), given the
// free function's value f and slope f1.
inline double bernoulli_rhs(Branch br, double lam, double f, double f1, double y) {
  const double l2 = lam * lam, ff = f * f1;
  switch (br) {
    case Branch::R1_1: return ff * (y * y * y - y) / (f * f - l2);
    case Branch::R2a_2: return ff * (y * y * y - y) / (l2 + f * f);
    case Branch::R2b_2: return ff * (y * y * y - y) / (f * f - l2);
    case Branch::R2b_3: return -ff * (y * y * y + y) / (f * f - l2);
    default: throw InvalidArgument(std::string("no Bernoulli equation for branch ") + to_string(br));
  }
}

// Admissible range of the squared free value f^2 for the family's constants.
inline Interval admissible_range(Branch br, double c3, double lam) {
  const double l2 = lam * lam, inf = std::numeric_limits<double>::infinity();
  switch (br) {
    case Branch::R1_1: return {l2, l2 - 1 / c3};
    case Branch::R2a_2: return {0, inf};
    case Branch::R2b_2: return {0, l2};
    case Branch::R2b_3: return {l2 + 1 / c3, inf};
    default: throw InvalidArgument(std::string("no minimal family for branch ") + to_string(br));
  }
}

// The helicoid's non-free component (w for type I, x for IIa/IIb) without the
// sign, as a function of the free value.
inline Jet2 minimal_helicoid_component(Branch br, double c, double lam, const Jet2& f) {
  const double l2 = lam * lam;
  switch (br) {
    case Branch::R1_1: {
      const Jet2 q = f * f - l2, den = 1.0 + c * q;
      return std::sqrt((c * l2 - 1) / c) * asin(sqrt(-c * q)) -
             lam * atan(sqrt((1 - c * l2) * q / (l2 * den)));
    }
    case Branch::R2a_2: {
      const Jet2 q = f * f + l2;
      return std::sqrt((1 + c * l2) / c) * asinh(sqrt(c * q)) -
             lam * atanh(lam * sqrt(1.0 + c * q) / sqrt((1 + c * l2) * q));
    }
    case Branch::R2b_2: {
      const Jet2 q = l2 - f * f;
      return std::sqrt((1 + c * l2) / c) * asinh(sqrt(c * q)) -
             lam * atanh(sqrt((1 + c * l2) * q) / (lam * sqrt(1.0 + c * q)));
    }
    default: {
      const Jet2 q = f * f - l2;
      return std::sqrt((1 + c * l2) / c) * acosh(sqrt(c * q)) -
             lam * atanh(lam * sqrt(c * q - 1.0) / sqrt((1 + c * l2) * q));
    }
  }
}

// Slope of the non-free component obtained directly from minimality, up to the
// family sign.
inline double minimal_helicoid_slope(Branch br, double c, double lam, double f, double f1) {
  const double l2 = lam * lam, f2 = f * f;
  switch (br) {
    case Branch::R1_1: return std::sqrt(1 - c * l2) * (f1 / f) * std::sqrt((f2 - l2) / (1 + c * (f2 - l2)));
    case Branch::R2a_2: return std::sqrt(1 + c * l2) * (f1 / f) * std::sqrt((f2 + l2) / (1 + c * (f2 + l2)));
    case Branch::R2b_2: return std::sqrt(1 + c * l2) * (f1 / f) * std::sqrt((l2 - f2) / (1 + c * (l2 - f2)));
    default: return std::sqrt(1 + c * l2) * (f1 / f) * std::sqrt((f2 - l2) / (c * (f2 - l2) - 1));
  }
}

// Partner meridian component (r for R1_1, n otherwise) without sign and constant.
inline Jet2 minimal_partner_component(Branch br, double c, double lam, const Jet2& f) {
  const double l2 = lam * lam;
  switch (br) {
    case Branch::R1_1: return asin(sqrt(c * (l2 - f * f))) / std::sqrt(-c);
    case Branch::R2a_2: return asinh(sqrt(c * (l2 + f * f))) / std::sqrt(c);
    case Branch::R2b_2: return asinh(sqrt(c * (l2 - f * f))) / std::sqrt(c);
    default: return acosh(sqrt(c * (f * f - l2))) / std::sqrt(c);
  }
}

struct MinimalFamily {
  SurfacePair pair;
  Interval admissible_sq;       // range of the squared free value
  ScalarFn helicoid_component;  // closed form placed in the helicoid
  ScalarFn partner_component;   // closed form placed in the partner
  double helicoid_check = 0;    // max deviation from the integrated slope
  double partner_check = 0;     // max deviation from the integrated a g or b g
};

namespace detail {

inline void check_family_params(Branch br, const MinimalFamilyParams& p) {
  if (!(p.lambda > 0)) throw InvalidArgument("minimal family requires lambda > 0");
  if (p.sign != 1 && p.sign != -1) throw InvalidArgument("minimal family sign must be +1 or -1");
  if (br == Branch::R1_1 && !(p.c3 < 0)) throw InvalidArgument("type I minimal family requires c3 < 0");
  if (br != Branch::R1_1 && !(p.c3 > 0)) throw InvalidArgument("type II minimal families require c3 > 0");
}

inline double max_deviation_up_to_constant(const ScalarFn& closed, const ScalarFn& integrand,
                                           const std::vector<Interval>& pieces, double tol) {
  double worst = 0;
  for (const Interval& iv : pieces) {
    const CumulativeFn F = cumulative(integrand, iv.mid(), iv, tol);
    const double c0 = closed(iv.mid());
    for (int i = 0; i <= 64; ++i) {
      const double u = iv.lo + iv.length() * i / 64;
      worst = std::fmax(worst, std::fabs(closed(u) - c0 - F(u)));
    }
  }
  return worst;
}

}  // namespace detail

// Mean curvature of R1_1 in its own frame from x, a, b and their slopes.
// H2 carries the sign of the generic computation (opposite to the printed lemma).
inline std::pair<double, double> r11_mean_curvature(double lam, Dual x, Dual a, Dual b) {
  const double X = x.v, X1 = x.d, A = a.v, A1 = a.d, B = b.v, B1 = b.d;
  const double q = X * X - lam * lam, m = 1 + A * A - B * B;
  if (!(q > 0) || !(m < 0) || X * X1 == 0) throw DomainError("r11_mean_curvature: R1_1 not timelike or degenerate here");
  const double H1 = (-q * A1 + A * X * X1 * (B * B - A * A - 1)) / (2 * X * X1 * m * std::sqrt((1 + A * A) * q));
  const double H2 = (q * (A * A1 * B - B1 - A * A * B1) - B * X * X1 * m) / (2 * X * X1 * std::sqrt((1 + A * A) * q * -m * m * m));
  return {H1, -H2};
}

// Builds the Gauss-map-equal minimal pair for a type I/IIa/IIb branch from the
// family's free function (x for I, w for IIa, z for IIb).
inline MinimalFamily minimal_family(HelicoidalKind kind, Branch br, const MinimalFamilyParams& prm,
                                    const ScalarFn& free, const BuildOptions& opt = {}, Interval v_range = {}) {
  detail::require_family(kind, br);
  detail::check_family_params(br, prm);
  const double lam = prm.lambda, c = prm.c3, sg = prm.sign;
  const Interval iv = free.interval();
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw InvalidArgument("free function needs a finite interval");

  const Interval adm = admissible_range(br, c, lam);
  for (int i = 0; i <= 256; ++i) {
    const double u = iv.lo + iv.length() * i / 256, f = free(u);
    if (!(f * f > adm.lo && f * f < adm.hi))
      throw DomainError(std::string("free value ") + std::to_string(f) + " at u=" + std::to_string(u) +
                        " outside the admissible range f^2 in (" + std::to_string(adm.lo) + ", " +
                        std::to_string(adm.hi) + ")");
  }

  ScalarFn hel = detail::compose(free, [br, c, lam, sg](const Jet2& f) {
    return sg * minimal_helicoid_component(br, c, lam, f);
  }, iv);
  ProfileCurve prof;
  prof.interval = iv;
  switch (kind) {
    case HelicoidalKind::I: prof.x = free, prof.z = ScalarFn::constant(prm.c1), prof.w = hel; break;
    case HelicoidalKind::IIa: prof.w = free, prof.y = ScalarFn::constant(prm.c1), prof.x = hel; break;
    default: prof.z = free, prof.y = ScalarFn::constant(prm.c1), prof.x = hel; break;
  }
  SurfaceOptions sopt;
  sopt.clip = opt.clip;
  sopt.v = v_range;
  HelicoidalSurface X(kind, prof, lam, sopt);
  const std::vector<Interval> pieces = branch_pieces(X, br, opt.clip);
  if (pieces.size() != 1) throw DomainError("minimal family: the free function must keep one sign on its interval");
  const Interval piece = pieces.front();
  const double um = piece.mid();

  // sign of the nonzero Bour function, fixed by Gauss-map equality
  const ProfileValues<double> pm = values_of(X.profile_jet_at(um));
  double s = 1;
  switch (br) {
    case Branch::R1_1: s = 1; break;
    case Branch::R2a_2: s = pm.x1 / pm.w1 > 0 ? 1 : -1; break;
    case Branch::R2b_2: s = pm.z > 0 ? 1 : -1; break;
    default: s = pm.x1 / pm.z1 > 0 ? 1 : -1; break;
  }
  ScalarFn sq = bernoulli_closed_form(kind, br, c, lam, free);
  ScalarFn root = detail::compose(sq, [s](const Jet2& q) { return s * sqrt(q); }, iv);
  BourFunctions ab;
  if (br == Branch::R1_1)
    ab.b = root;
  else
    ab.a = root;

  // Gauss-map equality fixes the phase of the coordinate change at one point
  const double rm = root(um);
  double anchor = 0;
  switch (br) {
    case Branch::R1_1: anchor = std::atan2(lam / (rm * pm.x), pm.w1 / (rm * pm.x1)); break;
    case Branch::R2a_2: anchor = std::asinh(-lam / (rm * pm.w)); break;
    case Branch::R2b_2: anchor = std::asinh(-pm.x1 / (rm * pm.z1)); break;
    default: anchor = -std::asinh(lam / (rm * pm.z)); break;
  }
  CoordChange change = reparametrize(X, br, pieces, {anchor}, opt.tol);

  const double c4 = prm.c4;
  ScalarFn part = detail::compose(free, [br, c, lam, s, c4](const Jet2& f) {
    return s * minimal_partner_component(br, c, lam, f) + c4;
  }, iv);
  ScalarFn constant_part = ScalarFn::constant(prm.c2);
  std::pair<ScalarFn, ScalarFn> comps =
      br == Branch::R1_1 ? std::pair{constant_part, part} : std::pair{part, constant_part};

  MinimalFamily out{detail::assemble(X, br, ab, pieces, std::move(change), opt, comps), adm, hel, part, 0, 0};

  ScalarFn slope_fn([free, br, c, lam, sg](double u) {
    const Dual f = dual(free, u);
    return sg * minimal_helicoid_slope(br, c, lam, f.v, f.d);
  }, piece);
  out.helicoid_check = detail::max_deviation_up_to_constant(hel, slope_fn, pieces, opt.tol);
  const ProfileCurve pc = X.profile();
  ScalarFn partner_integrand([pc, root, br, lam](double u) {
    return root(u) * branch_math::partner_factor(br, lam, values_of(profile_jet(pc, u)));
  }, piece);
  out.partner_check = detail::max_deviation_up_to_constant(part, partner_integrand, pieces, opt.tol);
  return out;
}

}  // namespace bour
