#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "bour/errors.hpp"
#include "bour/numerics/jet.hpp"

namespace bour {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double u) const { return u >= lo && u <= hi; }
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// A real function of one variable with optional analytic derivative rules.
class ScalarFn {
 public:
  using Rule = std::function<double(double)>;

  ScalarFn() : ScalarFn(constant(0.0)) {}
  explicit ScalarFn(Rule f, Interval iv = {}) : f_(std::move(f)), iv_(iv) {}
  ScalarFn(Rule f, Rule d1, Rule d2, Interval iv = {})
      : f_(std::move(f)), d1_(std::move(d1)), d2_(std::move(d2)), iv_(iv) {}

  static ScalarFn constant(double c) {
    ScalarFn s([c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; });
    s.const_ = c;
    return s;
  }

  // g maps the jet of the variable u to the jet of the function
  static ScalarFn from_jet(std::function<Jet2(const Jet2&)> g, Interval iv = {}) {
    auto gp = std::make_shared<std::function<Jet2(const Jet2&)>>(std::move(g));
    return ScalarFn([gp](double u) { return (*gp)(Jet2::variable(u)).v; },
                    [gp](double u) { return (*gp)(Jet2::variable(u)).d; },
                    [gp](double u) { return (*gp)(Jet2::variable(u)).dd; }, iv);
  }

  // g returns (f', f'') at u; the value rule is supplied separately
  static ScalarFn with_slope(Rule f, std::function<Dual(double)> slope, Interval iv = {}) {
    auto sp = std::make_shared<std::function<Dual(double)>>(std::move(slope));
    return ScalarFn(std::move(f), [sp](double u) { return (*sp)(u).v; },
                    [sp](double u) { return (*sp)(u).d; }, iv);
  }

  double operator()(double u) const { return f_(u); }

  bool has_rule(int order) const { return order == 1 ? bool(d1_) : order == 2 ? bool(d2_) : true; }
  double rule(int order, double u) const { return order == 1 ? d1_(u) : order == 2 ? d2_(u) : f_(u); }

  const Interval& interval() const { return iv_; }
  ScalarFn restricted(Interval iv) const {
    ScalarFn s = *this;
    s.iv_ = iv;
    return s;
  }

  std::optional<double> constant_value() const { return const_; }

 private:
  Rule f_, d1_, d2_;
  Interval iv_;
  std::optional<double> const_;
};

inline double fd_step(double u, int order) {
  const double eps = std::numeric_limits<double>::epsilon();
  return (order == 1 ? std::cbrt(eps) : std::pow(eps, 0.25)) * (1.0 + std::fabs(u));
}

namespace detail {

inline void require_margin(const ScalarFn& f, double u, double h) {
  const Interval& iv = f.interval();
  if (u - 2 * h < iv.lo || u + 2 * h > iv.hi)
    throw DomainError("derivative: u=" + std::to_string(u) + " too close to interval boundary");
}

inline double central1(const ScalarFn::Rule& g, double u, double h) {
  auto d = [&](double s) { return (g(u + s) - g(u - s)) / (2 * s); };
  return (4 * d(h / 2) - d(h)) / 3;
}

}  // namespace detail

inline double derivative(const ScalarFn& f, double u, int order) {
  if (order != 1 && order != 2) throw InvalidArgument("derivative order must be 1 or 2");
  if (f.has_rule(order)) return f.rule(order, u);
  if (order == 1) {
    const double h = fd_step(u, 1);
    detail::require_margin(f, u, h);
    return detail::central1([&](double s) { return f(s); }, u, h);
  }
  if (f.has_rule(1)) {
    const double h = fd_step(u, 1);
    detail::require_margin(f, u, h);
    return detail::central1([&](double s) { return f.rule(1, s); }, u, h);
  }
  const double h = fd_step(u, 2);
  detail::require_margin(f, u, h);
  return (f(u + h) - 2 * f(u) + f(u - h)) / (h * h);
}

inline Jet2 jet(const ScalarFn& f, double u) { return {f(u), derivative(f, u, 1), derivative(f, u, 2)}; }
inline Dual dual(const ScalarFn& f, double u) { return {f(u), derivative(f, u, 1)}; }
inline Dual slope(const ScalarFn& f, double u) { return {derivative(f, u, 1), derivative(f, u, 2)}; }

}  // namespace bour
