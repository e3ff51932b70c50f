#pragma once
#include <array>
#include <cmath>
#include <cstddef>

// Linear algebra of E^4_1 (signature +,+,+,-) and its bivector space.

namespace bour {

struct Vec4 {
  double x1 = 0, x2 = 0, x3 = 0, x4 = 0;

  double operator[](std::size_t i) const {
    return i == 0 ? x1 : i == 1 ? x2 : i == 2 ? x3 : x4;
  }
  Vec4 operator+(const Vec4& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3, x4 + o.x4}; }
  Vec4 operator-(const Vec4& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3, x4 - o.x4}; }
  Vec4 operator-() const { return {-x1, -x2, -x3, -x4}; }
  Vec4 operator*(double s) const { return {x1 * s, x2 * s, x3 * s, x4 * s}; }
  Vec4 operator/(double s) const { return {x1 / s, x2 / s, x3 / s, x4 / s}; }
  Vec4& operator+=(const Vec4& o) { return *this = *this + o; }
  bool operator==(const Vec4&) const = default;
};

inline Vec4 operator*(double s, const Vec4& v) { return v * s; }

inline constexpr Vec4 eta1{1, 0, 0, 0};
inline constexpr Vec4 eta2{0, 1, 0, 0};
inline constexpr Vec4 eta3{0, 0, 1, 0};
inline constexpr Vec4 eta4{0, 0, 0, 1};

inline double inner4(const Vec4& x, const Vec4& y) {
  return x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3 - x.x4 * y.x4;
}

inline double euclid_norm_sq(const Vec4& x) { return x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3 + x.x4 * x.x4; }

enum class CausalClass { Spacelike, Timelike, Lightlike };

inline const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "Spacelike";
    case CausalClass::Timelike: return "Timelike";
    default: return "Lightlike";
  }
}

inline double causal_tolerance(const Vec4& x) { return 1e-12 * (1.0 + euclid_norm_sq(x)); }

inline CausalClass causal_character(const Vec4& x) {
  const double q = inner4(x, x);
  const double tau = causal_tolerance(x);
  if (q > tau || x == Vec4{}) return CausalClass::Spacelike;
  if (q < -tau) return CausalClass::Timelike;
  return CausalClass::Lightlike;
}

// Coefficients on eta_i ^ eta_j, fixed order (12,13,14,23,24,34).
struct Bivector6 {
  std::array<double, 6> c{};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
  Bivector6 operator+(const Bivector6& o) const {
    Bivector6 r;
    for (std::size_t i = 0; i < 6; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Bivector6 operator-(const Bivector6& o) const {
    Bivector6 r;
    for (std::size_t i = 0; i < 6; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  Bivector6 operator*(double s) const {
    Bivector6 r;
    for (std::size_t i = 0; i < 6; ++i) r.c[i] = c[i] * s;
    return r;
  }
  bool operator==(const Bivector6&) const = default;
};

inline constexpr std::array<const char*, 6> bivector_labels{"12", "13", "14", "23", "24", "34"};
inline constexpr std::array<double, 6> bivector_signs{1, 1, -1, 1, -1, -1};

inline Bivector6 wedge(const Vec4& x, const Vec4& y) {
  return {{x.x1 * y.x2 - x.x2 * y.x1, x.x1 * y.x3 - x.x3 * y.x1, x.x1 * y.x4 - x.x4 * y.x1,
           x.x2 * y.x3 - x.x3 * y.x2, x.x2 * y.x4 - x.x4 * y.x2, x.x3 * y.x4 - x.x4 * y.x3}};
}

inline double inner6(const Bivector6& a, const Bivector6& b) {
  double s = 0;
  for (std::size_t i = 0; i < 6; ++i) s += bivector_signs[i] * a.c[i] * b.c[i];
  return s;
}

inline double max_abs_diff(const Bivector6& a, const Bivector6& b) {
  double m = 0;
  for (std::size_t i = 0; i < 6; ++i) m = std::fmax(m, std::fabs(a.c[i] - b.c[i]));
  return m;
}

struct NullBasis {
  Vec4 xi3;
  Vec4 xi4;
};

inline NullBasis null_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{0, 0, -r, r}, {0, 0, r, r}};
}

inline Vec4 from_null_basis(double a1, double a2, double a3, double a4) {
  const double r = 1.0 / std::sqrt(2.0);
  return {a1, a2, r * (a4 - a3), r * (a3 + a4)};
}

}  // namespace bour
