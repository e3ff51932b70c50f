#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "bour/errors.hpp"
#include "bour/numerics/scalar_fn.hpp"

namespace bour {

inline constexpr double default_clip = 1e-4;

struct ProfileCurve {
  ScalarFn x = ScalarFn::constant(0);
  ScalarFn y = ScalarFn::constant(0);
  ScalarFn z = ScalarFn::constant(0);
  ScalarFn w = ScalarFn::constant(0);
  Interval interval{0, 1};
};

// Value, first and second derivative of every profile slot at one u.
struct ProfileJet {
  Jet2 x, y, z, w;
};

inline ProfileJet profile_jet(const ProfileCurve& p, double u) {
  return {jet(p.x, u), jet(p.y, u), jet(p.z, u), jet(p.w, u)};
}

// Union of closed u-pieces (sorted, disjoint) times a v-interval.
struct Domain {
  std::vector<Interval> pieces;
  Interval v;

  Interval hull() const { return {pieces.front().lo, pieces.back().hi}; }

  int piece_index(double u) const {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const double slack = 1e-12 * (1 + std::fabs(u));
      if (u >= pieces[i].lo - slack && u <= pieces[i].hi + slack) return int(i);
    }
    return -1;
  }
  bool contains_u(double u) const { return piece_index(u) >= 0; }

  void require(double u, double v_) const {
    if (!contains_u(u)) throw DomainError("u=" + std::to_string(u) + " outside the surface domain");
    if (std::isfinite(v.lo) && std::isfinite(v.hi) && !v.contains(v_))
      throw DomainError("v=" + std::to_string(v_) + " outside the surface domain");
  }
};

// Pieces of iv left after removing (z - delta, z + delta) around every sampled
// zero z of g.
inline std::vector<Interval> split_at_zeros(const std::function<double(double)>& g, Interval iv, double delta,
                                            const std::string& what, int samples = 2048) {
  std::vector<double> zeros;
  double prev_u = iv.lo, prev_g = g(iv.lo);
  int exact = 0;
  auto tiny = [](double x) { return std::fabs(x) < 1e-300; };
  if (tiny(prev_g)) {
    zeros.push_back(prev_u);
    ++exact;
  }
  for (int k = 1; k <= samples; ++k) {
    const double u = k == samples ? iv.hi : iv.lo + iv.length() * k / samples;
    const double gu = g(u);
    if (!std::isfinite(gu)) throw DomainError(what + " is not finite at u=" + std::to_string(u));
    if (tiny(gu)) {
      ++exact;
      zeros.push_back(u);
    } else if (!tiny(prev_g) && (gu > 0) != (prev_g > 0)) {
      double a = prev_u, b = u, ga = prev_g;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1 + std::fabs(a)); ++it) {
        const double m = 0.5 * (a + b), gm = g(m);
        if ((gm > 0) == (ga > 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    prev_u = u;
    prev_g = gu;
  }
  if (exact > samples / 2) throw DomainError(what + " vanishes identically on the interval");
  std::vector<Interval> pieces;
  double lo = iv.lo;
  for (double z : zeros) {
    if (z - delta > lo) pieces.push_back({lo, z - delta});
    lo = std::fmax(lo, z + delta);
  }
  if (lo < iv.hi) pieces.push_back({lo, iv.hi});
  if (pieces.empty()) throw DomainError(what + ": no admissible piece left after clipping");
  return pieces;
}

}  // namespace bour
