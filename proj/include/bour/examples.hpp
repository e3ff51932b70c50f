#pragma once
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bour/bour/correspondence.hpp"
#include "bour/bour/minimal.hpp"
#include "bour/verify.hpp"

// The four worked examples: x(u) = u type I, w(u) = u type IIa, z(u) = u type
// IIb (iii), and the type III pair with x = 0, w = z = u, lambda = 5.

namespace bour {

// A printed closed form compared against the constructed one at sample points.
struct PrintedCheck {
  std::string name;
  std::function<double(double, double)> printed, built;
  bool up_to_constant = false;  // constant matched per piece at (piece midpoint, v midpoint)
  bool asserted = true;         // false for printed forms known to be wrong
  double tol = 1e-6;
};

struct PrintedResult {
  std::string name;
  double max_deviation = 0;
  double tol = 0;
  bool asserted = true;
  bool pass = false;
};

struct ExampleSetup {
  int number = 0;
  Branch branch = Branch::R1_1;
  Interval u_range, v_range;
  SurfacePair pair;                    // closed-form partner (minimal families) or Example 4 partner
  std::optional<SurfacePair> quadrature_pair;  // partner rebuilt from a, b by quadrature
  std::optional<MinimalFamilyParams> params;
  bool minimal_claimed = false;
  double gauss_tol = 1e-6;
  std::vector<PrintedCheck> printed;
};

// Gap around w = 0 for the type III example. Pulled-back jets there cancel
// terms of size lambda^2/(4 u^2), so double rounding grows like 1/u^2.
inline constexpr double example4_clip = 1e-2;

namespace detail {

inline ScalarFn identity_on(Interval iv) {
  return ScalarFn([](double u) { return u; }, [](double) { return 1.0; }, [](double) { return 0.0; }, iv);
}

}  // namespace detail

inline PrintedResult evaluate_printed(const PrintedCheck& c, const Domain& d, Interval v_range, int samples = 50) {
  const std::vector<double> us = detail::sample_pieces(d.pieces, samples);
  const double vm = v_range.mid();
  PrintedResult r{c.name, 0, c.tol, c.asserted, false};
  for (std::size_t k = 0; k < us.size(); ++k) {
    const double u = us[k];
    const double v = v_range.lo + v_range.length() * double(k % 7) / 6;
    double shift = 0;
    if (c.up_to_constant) {
      const Interval piece = d.pieces[std::size_t(d.piece_index(u))];
      shift = c.built(piece.mid(), vm) - c.printed(piece.mid(), vm);
    }
    r.max_deviation = std::fmax(r.max_deviation, std::fabs(c.built(u, v) - c.printed(u, v) - shift));
  }
  r.pass = r.max_deviation <= c.tol;
  return r;
}

inline ExampleSetup example_setup(int n) {
  struct Meta {
    int number = 0;
    Branch branch = Branch::R1_1;
    Interval u_range, v_range;
    std::optional<SurfacePair> pair, quadrature_pair;
    std::optional<MinimalFamilyParams> params;
    bool minimal_claimed = false;
    double gauss_tol = 1e-6;
    std::vector<PrintedCheck> printed;
  } e;
  e.number = n;
  BuildOptions opt;
  auto u_only = [](std::function<double(double)> f) { return [f](double u, double) { return f(u); }; };
  switch (n) {
    case 1: {
      e.branch = Branch::R1_1;
      e.u_range = {1.32, 1.72};
      e.v_range = {0, 2 * std::numbers::pi};
      e.params = MinimalFamilyParams{1, 0, 0, -0.5, 0, 1};
      MinimalFamily m = minimal_family(HelicoidalKind::I, e.branch, *e.params, detail::identity_on(e.u_range), opt,
                                       e.v_range);
      e.pair = m.pair;
      e.quadrature_pair = partner(m.pair.helicoidal, e.branch, m.pair.ab, opt);
      e.minimal_claimed = true;
      const RotationalSurface Rq = e.quadrature_pair->rotational;
      const ScalarFn w = m.pair.helicoidal.profile().w, off = m.pair.change.offset;
      e.printed.push_back({"partner x4 = sqrt2 asin sqrt((u^2-1)/2)",
                           u_only([](double u) { return std::sqrt(2.0) * std::asin(std::sqrt((u * u - 1) / 2)); }),
                           u_only([Rq](double u) { return Rq.components().r(u); }), true, true, 1e-6});
      e.printed.push_back({"phase -1/2 atan((2u^2-3)/(sqrt3 sqrt(-u^4+4u^2-3)))",
                           u_only([](double u) {
                             return -0.5 * std::atan((2 * u * u - 3) /
                                                     (std::sqrt(3.0) * std::sqrt(-u * u * u * u + 4 * u * u - 3)));
                           }),
                           u_only([off](double u) { return off(u); }), true, true, 1e-6});
      e.printed.push_back({"helicoid w as printed: sqrt3 (asin sqrt((u^2-1)/2) - atan sqrt((u^2-1)/(u^2+1)))",
                           u_only([](double u) {
                             return std::sqrt(3.0) * (std::asin(std::sqrt((u * u - 1) / 2)) -
                                                      std::atan(std::sqrt((u * u - 1) / (u * u + 1))));
                           }),
                           u_only([w](double u) { return w(u); }), false, false, 1e-9});
      e.printed.push_back({"helicoid w corrected: sqrt3 asin sqrt((u^2-1)/2) - atan sqrt(3(u^2-1)/(3-u^2))",
                           u_only([](double u) {
                             return std::sqrt(3.0) * std::asin(std::sqrt((u * u - 1) / 2)) -
                                    std::atan(std::sqrt(3 * (u * u - 1) / (3 - u * u)));
                           }),
                           u_only([w](double u) { return w(u); }), false, true, 1e-9});
      break;
    }
    case 2: {
      e.branch = Branch::R2a_2;
      e.u_range = {1.19, 10};
      e.v_range = {-1.5, 1.5};
      e.params = MinimalFamilyParams{1, 0, 0, 1, 0, 1};
      MinimalFamily m = minimal_family(HelicoidalKind::IIa, e.branch, *e.params, detail::identity_on(e.u_range), opt,
                                       e.v_range);
      e.pair = m.pair;
      e.quadrature_pair = partner(m.pair.helicoidal, e.branch, m.pair.ab, opt);
      e.minimal_claimed = true;
      const RotationalSurface Rq = e.quadrature_pair->rotational;
      const RotationalSurface R = m.pair.rotational;
      const ScalarFn x = m.pair.helicoidal.profile().x, off = m.pair.change.offset;
      e.printed.push_back({"partner x1 = asinh sqrt(1+u^2)",
                           u_only([](double u) { return std::asinh(std::sqrt(1 + u * u)); }),
                           u_only([Rq](double u) { return Rq.components().n(u); }), true, true, 1e-6});
      e.printed.push_back({"partner x1 closed form = asinh sqrt(1+u^2)",
                           u_only([](double u) { return std::asinh(std::sqrt(1 + u * u)); }),
                           u_only([R](double u) { return R.components().n(u); }), false, true, 1e-9});
      e.printed.push_back({"phase ln(u/sqrt(3u^2+2sqrt(2u^4+6u^2+4)+4))",
                           u_only([](double u) {
                             return std::log(u / std::sqrt(3 * u * u + 2 * std::sqrt(2 * u * u * u * u + 6 * u * u + 4) + 4));
                           }),
                           u_only([off](double u) { return off(u); }), false, true, 1e-6});
      e.printed.push_back({"helicoid x = sqrt2 asinh sqrt(1+u^2) - atanh sqrt((2+u^2)/(2+2u^2))",
                           u_only([](double u) {
                             return std::sqrt(2.0) * std::asinh(std::sqrt(1 + u * u)) -
                                    std::atanh(std::sqrt((2 + u * u) / (2 + 2 * u * u)));
                           }),
                           u_only([x](double u) { return x(u); }), false, true, 1e-9});
      break;
    }
    case 3: {
      e.branch = Branch::R2b_3;
      e.u_range = {2, 8};
      e.v_range = {-1, 1};
      e.params = MinimalFamilyParams{1, 0, 0, 0.5, 0, 1};
      MinimalFamily m = minimal_family(HelicoidalKind::IIb, e.branch, *e.params, detail::identity_on(e.u_range), opt,
                                       e.v_range);
      e.pair = m.pair;
      e.quadrature_pair = partner(m.pair.helicoidal, e.branch, m.pair.ab, opt);
      e.minimal_claimed = true;
      const RotationalSurface Rq = e.quadrature_pair->rotational;
      const ScalarFn x = m.pair.helicoidal.profile().x, off = m.pair.change.offset;
      e.printed.push_back({"partner x1 = sqrt2 acosh sqrt((u^2-1)/2)",
                           u_only([](double u) { return std::sqrt(2.0) * std::acosh(std::sqrt((u * u - 1) / 2)); }),
                           u_only([Rq](double u) { return Rq.components().n(u); }), true, true, 1e-6});
      e.printed.push_back({"phase -atanh sqrt((u^2-3)/(3u^2-3))",
                           u_only([](double u) { return -std::atanh(std::sqrt((u * u - 3) / (3 * u * u - 3))); }),
                           u_only([off](double u) { return off(u); }), false, true, 1e-6});
      e.printed.push_back({"helicoid x as printed: sqrt3/2 asinh sqrt((u^2-3)/2) - 1/2 atanh sqrt((u^2-3)/(3u^2-3))",
                           u_only([](double u) {
                             return std::sqrt(3.0) / 2 * std::asinh(std::sqrt((u * u - 3) / 2)) -
                                    0.5 * std::atanh(std::sqrt((u * u - 3) / (3 * u * u - 3)));
                           }),
                           u_only([x](double u) { return x(u); }), false, false, 1e-9});
      e.printed.push_back({"helicoid x corrected: sqrt3 asinh sqrt((u^2-3)/2) - atanh sqrt((u^2-3)/(3u^2-3))",
                           u_only([](double u) {
                             return std::sqrt(3.0) * std::asinh(std::sqrt((u * u - 3) / 2)) -
                                    std::atanh(std::sqrt((u * u - 3) / (3 * u * u - 3)));
                           }),
                           u_only([x](double u) { return x(u); }), false, true, 1e-9});
      break;
    }
    case 4: {
      e.branch = Branch::R3;
      e.u_range = {-4, 4};
      e.v_range = {-3, 3};
      e.gauss_tol = 1e-9;
      opt.clip = example4_clip;
      ProfileCurve prof;
      prof.interval = e.u_range;
      prof.z = detail::identity_on(e.u_range);
      prof.w = detail::identity_on(e.u_range);
      SurfaceOptions sopt;
      sopt.v = e.v_range;
      sopt.clip = example4_clip;
      HelicoidalSurface X(HelicoidalKind::III, prof, 5.0, sopt);
      BourFunctions ab{ScalarFn::constant(0),
                       ScalarFn([](double u) { return 1 + 25 / (4 * u * u); },
                                [](double u) { return -25 / (2 * u * u * u); },
                                [](double u) { return 75 / (2 * u * u * u * u); }, e.u_range)};
      e.pair = partner(X, e.branch, ab, opt);
      const SurfacePair P = *e.pair;
      auto at = [P](double u, double v) {
        const auto [ub, vb] = P.change.mapped(u, v);
        return P.rotational.eval(ub, vb);
      };
      const double r2 = std::numbers::sqrt2;
      e.printed.push_back({"R3 eta2 component sqrt2 u v + 5/sqrt2",
                           [r2](double u, double v) { return r2 * u * v + 5 / r2; },
                           [at](double u, double v) { return at(u, v).x2; }, false, true, 1e-9});
      e.printed.push_back({"R3 xi3 component u - 25/(4u) + u (v + 5/(2u))^2",
                           [](double u, double v) {
                             const double t = v + 5 / (2 * u);
                             return u - 25 / (4 * u) + u * t * t;
                           },
                           [at, r2](double u, double v) {
                             const Vec4 p = at(u, v);
                             return (p.x4 - p.x3) / r2;
                           },
                           true, true, 1e-9});
      e.printed.push_back({"R3 xi4 component u", [](double u, double) { return u; },
                           [at, r2](double u, double v) {
                             const Vec4 p = at(u, v);
                             return (p.x3 + p.x4) / r2;
                           },
                           false, true, 1e-9});
      e.printed.push_back({"R3 eta1 component 0", [](double, double) { return 0.0; },
                           [at](double u, double v) { return at(u, v).x1; }, false, true, 1e-9});
      break;
    }
    default: throw InvalidArgument("example number must be 1, 2, 3 or 4");
  }
  return {e.number, e.branch, e.u_range, e.v_range, std::move(*e.pair), std::move(e.quadrature_pair), e.params,
          e.minimal_claimed, e.gauss_tol, std::move(e.printed)};
}

struct ExampleResult {
  ExampleSetup setup;
  std::vector<VerificationReport> reports;
  std::vector<PrintedResult> printed;
  bool pass = false;
};

// Runs the example's full verification suite on an nu x nv grid.
inline ExampleResult run_example(int n, int nu = 20, int nv = 20) {
  ExampleResult r{example_setup(n), {}, {}, true};
  const ExampleSetup& e = r.setup;
  const Grid g = Grid::over(e.pair.domain, nu, nv);
  r.reports.push_back(check_isometry(e.pair, g, 1e-6));
  r.reports.push_back(compare_gauss_maps(e.pair, g, e.gauss_tol));
  if (e.minimal_claimed) {
    VerificationReport hx = check_minimal(e.pair.helicoidal, g, 1e-6);
    hx.check = "minimal_helicoidal";
    VerificationReport hr = check_minimal(e.pair.rotational_pulled(), g, 1e-6);
    hr.check = "minimal_rotational";
    r.reports.push_back(hx);
    r.reports.push_back(hr);
  }
  r.reports.push_back(check_curvature_match(e.pair, g, 1e-4));
  if (e.quadrature_pair) {
    VerificationReport q = check_isometry(*e.quadrature_pair, g, 1e-6);
    q.check = "isometry_quadrature_partner";
    r.reports.push_back(q);
  }
  for (const VerificationReport& rep : r.reports) r.pass = r.pass && rep.pass;
  for (const PrintedCheck& c : e.printed) {
    r.printed.push_back(evaluate_printed(c, e.pair.domain, e.v_range));
    if (c.asserted) r.pass = r.pass && r.printed.back().pass;
  }
  return r;
}

}  // namespace bour
