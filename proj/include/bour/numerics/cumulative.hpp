#pragma once
#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "bour/errors.hpp"
#include "bour/numerics/quadrature.hpp"
#include "bour/numerics/scalar_fn.hpp"

namespace bour {

// Antiderivative F of f with F(u0) = 0, stored as cubic Hermite panels whose
// node slopes are the exact integrand values.
class CumulativeFn {
 public:
  CumulativeFn(ScalarFn f, double u0, std::vector<double> nodes, std::vector<double> values, std::vector<double> slopes)
      : f_(std::move(f)), u0_(u0), nodes_(std::move(nodes)), values_(std::move(values)), slopes_(std::move(slopes)) {}

  double base() const { return u0_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  const ScalarFn& integrand() const { return f_; }
  Interval interval() const { return {nodes_.front(), nodes_.back()}; }

  double operator()(double u) const {
    const double slack = 1e-12 * (1 + std::fabs(u));
    if (u < nodes_.front() && u >= nodes_.front() - slack) u = nodes_.front();
    if (u > nodes_.back() && u <= nodes_.back() + slack) u = nodes_.back();
    if (u < nodes_.front() || u > nodes_.back())
      throw DomainError("cumulative integral evaluated outside [" + std::to_string(nodes_.front()) + ", " +
                        std::to_string(nodes_.back()) + "] at u=" + std::to_string(u));
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
    std::size_t i = it == nodes_.begin() ? 0 : std::size_t(it - nodes_.begin()) - 1;
    if (i + 1 >= nodes_.size()) i = nodes_.size() - 2;
    return hermite(i, u);
  }

  ScalarFn as_fn() const {
    auto self = std::make_shared<const CumulativeFn>(*this);
    return ScalarFn([self](double u) { return (*self)(u); }, [self](double u) { return self->f_(u); },
                    [self](double u) { return derivative(self->f_, u, 1); }, interval());
  }

 private:
  double hermite(std::size_t i, double u) const {
    const double a = nodes_[i], h = nodes_[i + 1] - a, t = (u - a) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
           (-2 * t3 + 3 * t2) * values_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
  }

  ScalarFn f_;
  double u0_;
  std::vector<double> nodes_, values_, slopes_;
};

namespace detail {

struct CumulativeBuilder {
  const ScalarFn& f;
  double u0, length, tol;
  std::vector<double> nodes, values, slopes;

  static double hermite_mid(double Fa, double Fb, double fa, double fb, double h) {
    return 0.5 * (Fa + Fb) + h * (fa - fb) / 8;
  }

  // walks from a to b (either direction), appending nodes after a
  void panel(double a, double b, double Fa, double fa, int depth) {
    const double h = b - a, m = 0.5 * (a + b);
    const double qtol = std::max(0.25 * tol * std::fabs(h) / length, 1e-15);
    const double I1 = integrate_fn([this](double s) { return f(s); }, a, m, qtol);
    const double I2 = integrate_fn([this](double s) { return f(s); }, m, b, qtol);
    const double fb = f(b);
    const double Fb = Fa + I1 + I2;
    const double err = std::fabs(hermite_mid(Fa, Fb, fa, fb, h) - (Fa + I1));
    const double allowed = 0.5 * tol * (1 + std::fabs(m - u0)) + 1e-14 * (std::fabs(Fa) + std::fabs(I1));
    if (err <= allowed) {
      nodes.push_back(b);
      values.push_back(Fb);
      slopes.push_back(fb);
      return;
    }
    if (depth > 40) throw ConvergenceError("cumulative: refinement limit near u=" + std::to_string(m));
    panel(a, m, Fa, fa, depth + 1);
    panel(m, b, values.back(), slopes.back(), depth + 1);
  }

  void sweep(double from, double to, int count) {
    nodes.assign(1, from);
    values.assign(1, 0.0);
    slopes.assign(1, f(from));
    for (int k = 0; k < count; ++k) {
      const double a = nodes.back();
      const double b = k + 1 == count ? to : from + (to - from) * (k + 1) / count;
      panel(a, b, values.back(), slopes.back(), 0);
    }
  }
};

}  // namespace detail

inline CumulativeFn cumulative(const ScalarFn& f, double u0, Interval iv, double tol = 1e-10, int panels = 512) {
  if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
    throw InvalidArgument("cumulative: interval must be finite and nonempty");
  if (!iv.contains(u0)) throw InvalidArgument("cumulative: base point outside interval");
  const double L = iv.length();
  detail::CumulativeBuilder left{f, u0, L, tol, {}, {}, {}}, right{f, u0, L, tol, {}, {}, {}};
  const int nl = u0 > iv.lo ? std::max(1, int(std::lround(panels * (u0 - iv.lo) / L))) : 0;
  const int nr = u0 < iv.hi ? std::max(1, int(std::lround(panels * (iv.hi - u0) / L))) : 0;
  std::vector<double> nodes, values, slopes;
  if (nl > 0) {
    left.sweep(u0, iv.lo, nl);
    nodes.assign(left.nodes.rbegin(), left.nodes.rend());
    values.assign(left.values.rbegin(), left.values.rend());
    slopes.assign(left.slopes.rbegin(), left.slopes.rend());
  }
  if (nr > 0) {
    right.sweep(u0, iv.hi, nr);
    const std::size_t skip = nl > 0 ? 1 : 0;
    nodes.insert(nodes.end(), right.nodes.begin() + skip, right.nodes.end());
    values.insert(values.end(), right.values.begin() + skip, right.values.end());
    slopes.insert(slopes.end(), right.slopes.begin() + skip, right.slopes.end());
  }
  return CumulativeFn(f, u0, std::move(nodes), std::move(values), std::move(slopes));
}

}  // namespace bour
