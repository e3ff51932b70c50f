#pragma once
#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "bour/errors.hpp"

namespace bour {

// Accepted steps of an adaptive Dormand-Prince run; at() interpolates with
// cubic Hermite segments built from the stored slopes.
struct OdeSolution {
  std::vector<double> u, y, dy;

  double at(double t) const {
    const bool forward = u.back() >= u.front();
    const double lo = forward ? u.front() : u.back(), hi = forward ? u.back() : u.front();
    if (t < lo || t > hi) throw DomainError("ode solution queried outside its span at u=" + std::to_string(t));
    std::size_t i = 0;
    while (i + 2 < u.size() && (forward ? u[i + 1] < t : u[i + 1] > t)) ++i;
    const double h = u[i + 1] - u[i];
    if (h == 0) return y[i];
    const double s = (t - u[i]) / h, s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * h * dy[i] + (-2 * s3 + 3 * s2) * y[i + 1] +
           (s3 - s2) * h * dy[i + 1];
  }
  double final_value() const { return y.back(); }
};

using OdeRhs = std::function<double(double u, double y)>;

inline OdeSolution solve_ode(const OdeRhs& rhs, double y0, double u0, double u1, double tol = 1e-10) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  if (!(tol > 0)) throw InvalidArgument("solve_ode: tol must be positive");
  OdeSolution sol;
  if (u0 == u1) {
    sol.u = {u0, u1};
    sol.y = {y0, y0};
    sol.dy = {rhs(u0, y0), rhs(u0, y0)};
    return sol;
  }
  auto system = [&rhs](const State& s, State& ds, double t) { ds[0] = rhs(t, s[0]); };
  auto observer = [&](const State& s, double t) {
    if (!std::isfinite(s[0])) throw StiffnessError("solve_ode: solution became non-finite at u=" + std::to_string(t));
    if (sol.u.size() > 200000) throw StiffnessError("solve_ode: step count exceeded near u=" + std::to_string(t));
    if (!sol.u.empty() && t == sol.u.back()) return;
    sol.u.push_back(t);
    sol.y.push_back(s[0]);
    sol.dy.push_back(rhs(t, s[0]));
  };
  State state{y0};
  const double span = u1 - u0;
  const double dt0 = span / 100;
  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State>());
  try {
    odeint::integrate_adaptive(stepper, system, state, u0, u1, dt0, observer);
  } catch (const odeint::step_adjustment_error& e) {
    throw StiffnessError(std::string("solve_ode: step size collapsed: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    throw StiffnessError(std::string("solve_ode: no progress: ") + e.what());
  }
  if (sol.u.size() < 2 || std::fabs(sol.u.back() - u1) > 1e-12 * (1 + std::fabs(u1)))
    throw StiffnessError("solve_ode: integration did not reach the end point");
  sol.u.back() = u1;
  return sol;
}

}  // namespace bour
