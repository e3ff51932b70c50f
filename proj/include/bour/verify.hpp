#pragma once
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bour/bour/correspondence.hpp"
#include "bour/errors.hpp"
#include "bour/surfaces/geometry.hpp"

namespace bour {

struct Grid {
  std::vector<double> u, v;

  std::size_t size() const { return u.size() * v.size(); }

  static std::vector<double> linspace(Interval iv, int n) {
    if (n < 2) throw InvalidArgument("grid needs at least 2 samples per direction");
    if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw InvalidArgument("grid interval must be finite and nonempty");
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = i + 1 == n ? iv.hi : iv.lo + iv.length() * i / (n - 1);
    return s;
  }

  static Grid uniform(Interval u, Interval v, int nu, int nv) { return {linspace(u, nu), linspace(v, nv)}; }

  // nu samples spread over the domain's u-pieces in proportion to their lengths
  static Grid over(const Domain& d, int nu, int nv, Interval v_fallback = {0, 1}) {
    const Interval vr = std::isfinite(d.v.lo) && std::isfinite(d.v.hi) ? d.v : v_fallback;
    Grid g;
    g.v = linspace(vr, nv);
    double L = 0;
    for (const Interval& p : d.pieces) L += p.length();
    int left = nu;
    for (std::size_t i = 0; i < d.pieces.size(); ++i) {
      const Interval& p = d.pieces[i];
      const int n = i + 1 == d.pieces.size() ? left : std::max(2, int(std::lround(nu * p.length() / L)));
      const std::vector<double> s = linspace(p, std::max(2, n));
      g.u.insert(g.u.end(), s.begin(), s.end());
      left -= n;
    }
    return g;
  }
};

struct VerificationReport {
  std::string check;
  double tol = 0;
  std::vector<double> residuals;  // row-major in u then v; NaN marks an excluded point
  double max_residual = 0;
  double min_residual = 0;
  bool pass = false;
  std::vector<std::pair<double, double>> excluded_points;
  std::vector<std::string> notes;
};

namespace detail {

inline VerificationReport run_grid(std::string name, const Grid& g, double tol,
                                   const std::function<double(double, double)>& residual) {
  VerificationReport r;
  r.check = std::move(name);
  r.tol = tol;
  r.residuals.reserve(g.size());
  double mx = -std::numeric_limits<double>::infinity(), mn = std::numeric_limits<double>::infinity();
  for (double u : g.u)
    for (double v : g.v) {
      try {
        const double e = residual(u, v);
        r.residuals.push_back(e);
        mx = std::fmax(mx, e);
        mn = std::fmin(mn, e);
      } catch (const DegenerateFrameError& ex) {
        r.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
        r.excluded_points.emplace_back(u, v);
        if (r.notes.size() < 8) r.notes.push_back(ex.what());
      }
    }
  if (r.excluded_points.size() == g.size()) throw DegenerateFrameError(r.check + ": every grid point was degenerate");
  r.max_residual = mx;
  r.min_residual = mn;
  r.pass = std::isfinite(mx) && mx <= tol;
  if (!r.excluded_points.empty())
    r.notes.push_back(std::to_string(r.excluded_points.size()) + " degenerate points excluded");
  return r;
}

inline double forms_gap(const Forms1& a, const Forms1& b) {
  return std::fmax(std::fmax(std::fabs(a.g11 - b.g11), std::fabs(a.g12 - b.g12)),
                   std::fmax(std::fabs(a.g22 - b.g22), std::fabs(a.W() - b.W())));
}

}  // namespace detail

// Both surfaces are evaluated at the same (u, v).
template <Surface A, Surface B>
VerificationReport check_isometry(const A& a, const B& b, const Grid& g, double tol) {
  return detail::run_grid("isometry", g, tol, [&](double u, double v) {
    return detail::forms_gap(first_fundamental(a, u, v), first_fundamental(b, u, v));
  });
}

inline VerificationReport check_isometry(const SurfacePair& p, const Grid& g, double tol = 1e-6) {
  return check_isometry(p.helicoidal, p.rotational_pulled(), g, tol);
}

template <Surface A, Surface B>
VerificationReport compare_gauss_maps(const A& a, const B& b, const Grid& g, double tol) {
  return detail::run_grid("gauss_map", g, tol,
                          [&](double u, double v) { return max_abs_diff(gauss_map(a, u, v), gauss_map(b, u, v)); });
}

inline VerificationReport compare_gauss_maps(const SurfacePair& p, const Grid& g, double tol = 1e-6) {
  return compare_gauss_maps(p.helicoidal, p.rotational_pulled(), g, tol);
}

template <Surface S>
VerificationReport check_minimal(const S& s, const Grid& g, double tol = 1e-6) {
  return detail::run_grid("minimal", g, tol, [&](double u, double v) {
    const CurvatureData c = curvature(s, u, v);
    return std::fmax(std::fabs(c.H1), std::fabs(c.H2));
  });
}

using FrameProvider = std::function<FrameField(double, double)>;

inline VerificationReport check_frames(const FrameProvider& frames, const Grid& g, double tol = 1e-9) {
  return detail::run_grid("frames", g, tol, [&](double u, double v) { return frame_defect(frames(u, v)); });
}

template <Surface S>
VerificationReport check_frames(const S& s, const Grid& g, double tol = 1e-9) {
  return check_frames([&s](double u, double v) { return frame(s, u, v); }, g, tol);
}

// K of a at (u, v) against K of b at map(u, v)
template <Surface A, Surface B>
VerificationReport check_curvature_match(const A& a, const B& b,
                                         const std::function<std::pair<double, double>(double, double)>& map,
                                         const Grid& g, double tol) {
  return detail::run_grid("curvature_match", g, tol, [&](double u, double v) {
    const auto [ub, vb] = map(u, v);
    return std::fabs(gauss_curvature(a, u, v) - gauss_curvature(b, ub, vb));
  });
}

inline VerificationReport check_curvature_match(const SurfacePair& p, const Grid& g, double tol = 1e-4) {
  const CoordChange& ch = p.change;
  return check_curvature_match(p.helicoidal, p.rotational, [&ch](double u, double v) { return ch.mapped(u, v); }, g,
                               tol);
}

}  // namespace bour
