#pragma once
#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bour/errors.hpp"
#include "bour/numerics/scalar_fn.hpp"

namespace bour {

struct QuadResult {
  double value = 0;
  double error = 0;
};

inline constexpr int max_quadrature_panels = 4000;

// One 15-point Kronrod panel with its embedded Gauss estimate. Boost reports
// the single-panel error on [-1, 1], so it is rescaled to [a, b] here.
template <class F>
QuadResult gk15_panel(const F& f, double a, double b) {
  double err = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
  return {v, err * std::fabs(b - a) / 2};
}

// Global adaptive bisection of the worst panel until the summed estimate meets tol.
template <class F>
QuadResult integrate_with_error(const F& f, double a, double b, double tol = 1e-10) {
  if (!(tol > 0)) throw InvalidArgument("integrate: tol must be positive");
  if (a == b) return {0, 0};
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  struct Panel {
    double a, b;
    QuadResult r;
    bool operator<(const Panel& o) const { return r.error < o.r.error; }
  };
  std::priority_queue<Panel> heap;
  Panel first{a, b, gk15_panel(f, a, b)};
  double total = first.r.value, err = first.r.error;
  heap.push(first);
  int count = 1;
  auto good_enough = [&] {
    return err <= tol || err <= 64 * std::numeric_limits<double>::epsilon() * std::fabs(total);
  };
  while (!good_enough() && count < max_quadrature_panels) {
    Panel p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) break;
    Panel l{p.a, m, gk15_panel(f, p.a, m)};
    Panel r{m, p.b, gk15_panel(f, m, p.b)};
    total += l.r.value + r.r.value - p.r.value;
    err += l.r.error + r.r.error - p.r.error;
    heap.push(l);
    heap.push(r);
    ++count;
  }
  // re-sum to shed accumulated cancellation in the running totals
  total = 0;
  err = 0;
  while (!heap.empty()) {
    total += heap.top().r.value;
    err += heap.top().r.error;
    heap.pop();
  }
  if (!std::isfinite(total)) throw ConvergenceError("integrate: non-finite result on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  return {sign * total, err};
}

template <class F>
double integrate_fn(const F& f, double a, double b, double tol = 1e-10) {
  const QuadResult r = integrate_with_error(f, a, b, tol);
  if (r.error > tol && r.error > 64 * std::numeric_limits<double>::epsilon() * std::fabs(r.value))
    throw ConvergenceError("integrate: subdivision limit reached on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "], error estimate " + std::to_string(r.error));
  return r.value;
}

inline double integrate(const ScalarFn& f, double a, double b, double tol = 1e-10) {
  return integrate_fn([&f](double u) { return f(u); }, a, b, tol);
}

}  // namespace bour
