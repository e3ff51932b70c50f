#pragma once
#include <cmath>

// Truncated Taylor arithmetic: Dual carries (f, f'), Jet2 carries (f, f', f'').

namespace bour {

struct Dual {
  double v = 0, d = 0;

  Dual() = default;
  Dual(double value, double slope = 0) : v(value), d(slope) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
inline Dual operator+(Dual a, double b) { return {a.v + b, a.d}; }
inline Dual operator+(double a, Dual b) { return {a + b.v, b.d}; }
inline Dual operator-(Dual a, double b) { return {a.v - b, a.d}; }
inline Dual operator-(double a, Dual b) { return {a - b.v, -b.d}; }
inline Dual operator*(Dual a, double b) { return {a.v * b, a.d * b}; }
inline Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }
inline Dual operator/(Dual a, double b) { return {a.v / b, a.d / b}; }
inline Dual operator/(double a, Dual b) { return Dual(a) / b; }

inline Dual chain(Dual a, double f, double df) { return {f, df * a.d}; }
inline Dual sqrt(Dual a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s);
}
inline Dual sin(Dual a) { return chain(a, std::sin(a.v), std::cos(a.v)); }
inline Dual cos(Dual a) { return chain(a, std::cos(a.v), -std::sin(a.v)); }
inline Dual sinh(Dual a) { return chain(a, std::sinh(a.v), std::cosh(a.v)); }
inline Dual cosh(Dual a) { return chain(a, std::cosh(a.v), std::sinh(a.v)); }
inline Dual exp(Dual a) {
  const double e = std::exp(a.v);
  return chain(a, e, e);
}
inline Dual log(Dual a) { return chain(a, std::log(a.v), 1.0 / a.v); }
inline Dual abs(Dual a) { return a.v < 0 ? -a : a; }

struct Jet2 {
  double v = 0, d = 0, dd = 0;

  Jet2() = default;
  Jet2(double value, double slope = 0, double curv = 0) : v(value), d(slope), dd(curv) {}

  static Jet2 variable(double u) { return {u, 1, 0}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d, -a.dd}; }
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2 * a.d * b.d + a.v * b.dd};
}
inline Jet2 operator*(const Jet2& a, double s) { return {a.v * s, a.d * s, a.dd * s}; }
inline Jet2 operator*(double s, const Jet2& a) { return a * s; }
inline Jet2 operator+(const Jet2& a, double s) { return {a.v + s, a.d, a.dd}; }
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { return {a.v - s, a.d, a.dd}; }
inline Jet2 operator-(double s, const Jet2& a) { return {s - a.v, -a.d, -a.dd}; }

// g applied to a, given g(a.v), g'(a.v), g''(a.v)
inline Jet2 chain(const Jet2& a, double g, double dg, double ddg) {
  return {g, dg * a.d, ddg * a.d * a.d + dg * a.dd};
}

inline Jet2 recip(const Jet2& a) {
  const double r = 1.0 / a.v;
  return chain(a, r, -r * r, 2 * r * r * r);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }
inline Jet2 operator/(const Jet2& a, double s) { return a * (1.0 / s); }
inline Jet2 operator/(double s, const Jet2& a) { return recip(a) * s; }

inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}
inline Jet2 log(const Jet2& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return chain(a, s, c, -s);
}
inline Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return chain(a, c, -s, -c);
}
inline Jet2 tan(const Jet2& a) {
  const double t = std::tan(a.v), s2 = 1 + t * t;
  return chain(a, t, s2, 2 * t * s2);
}
inline Jet2 sinh(const Jet2& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return chain(a, s, c, s);
}
inline Jet2 cosh(const Jet2& a) {
  const double s = std::sinh(a.v), c = std::cosh(a.v);
  return chain(a, c, s, c);
}
inline Jet2 tanh(const Jet2& a) {
  const double t = std::tanh(a.v), s2 = 1 - t * t;
  return chain(a, t, s2, -2 * t * s2);
}
inline Jet2 asin(const Jet2& a) {
  const double q = 1 - a.v * a.v, r = 1 / std::sqrt(q);
  return chain(a, std::asin(a.v), r, a.v * r / q);
}
inline Jet2 acos(const Jet2& a) {
  const double q = 1 - a.v * a.v, r = 1 / std::sqrt(q);
  return chain(a, std::acos(a.v), -r, -a.v * r / q);
}
inline Jet2 atan(const Jet2& a) {
  const double q = 1 + a.v * a.v;
  return chain(a, std::atan(a.v), 1 / q, -2 * a.v / (q * q));
}
inline Jet2 asinh(const Jet2& a) {
  const double q = 1 + a.v * a.v, r = 1 / std::sqrt(q);
  return chain(a, std::asinh(a.v), r, -a.v * r / q);
}
inline Jet2 acosh(const Jet2& a) {
  const double q = a.v * a.v - 1, r = 1 / std::sqrt(q);
  return chain(a, std::acosh(a.v), r, -a.v * r / q);
}
inline Jet2 atanh(const Jet2& a) {
  const double q = 1 - a.v * a.v;
  return chain(a, std::atanh(a.v), 1 / q, 2 * a.v / (q * q));
}
inline Jet2 abs(const Jet2& a) { return a.v < 0 ? -a : a; }

// a^b with both sides jets; integer exponents on negative bases are handled
inline Jet2 pow(const Jet2& a, const Jet2& b) {
  if (b.d == 0 && b.dd == 0) {
    const double p = b.v;
    if (p == 0) return {1, 0, 0};
    const double g = std::pow(a.v, p);
    const double dg = p * std::pow(a.v, p - 1);
    const double ddg = p == 1 ? 0 : p * (p - 1) * std::pow(a.v, p - 2);
    return chain(a, g, dg, ddg);
  }
  return exp(b * log(a));
}

}  // namespace bour
