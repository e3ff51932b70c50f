#pragma once
#include <cmath>
#include <concepts>
#include <string>

#include "bour/errors.hpp"
#include "bour/minkowski.hpp"

// Curvature machinery shared by every parametrized surface in E^4_1.

namespace bour {

struct SurfaceJet {
  Vec4 X, Xu, Xv, Xuu, Xuv, Xvv;
};

struct NormalPair {
  Vec4 N1, N2;
};

// Anything with second-order jets and a unit normal pair.
template <class S>
concept Surface = requires(const S& s, double u, double v) {
  { s.jet(u, v) } -> std::same_as<SurfaceJet>;
  { s.normals(u, v) } -> std::same_as<NormalPair>;
};

struct Forms1 {
  double g11 = 0, g12 = 0, g22 = 0;
  double W() const { return g11 * g22 - g12 * g12; }
};

struct Forms2 {
  double b1_11 = 0, b1_12 = 0, b1_22 = 0;
  double b2_11 = 0, b2_12 = 0, b2_22 = 0;
};

struct FrameField {
  Vec4 e1, e2, N1, N2;
  int epsilon = 1;
};

struct CurvatureData {
  double H1 = 0, H2 = 0, K = 0;
};

inline Forms1 forms1(const SurfaceJet& j) { return {inner4(j.Xu, j.Xu), inner4(j.Xu, j.Xv), inner4(j.Xv, j.Xv)}; }

inline Forms2 forms2(const SurfaceJet& j, const NormalPair& n) {
  return {inner4(j.Xuu, n.N1), inner4(j.Xuv, n.N1), inner4(j.Xvv, n.N1),
          inner4(j.Xuu, n.N2), inner4(j.Xuv, n.N2), inner4(j.Xvv, n.N2)};
}

inline int epsilon_of(const Forms1& g) {
  if (g.g11 == 0) throw DegenerateFrameError("g11 = 0: tangent frame undefined");
  return g.g11 > 0 ? 1 : -1;
}

inline FrameField tangent_frame(const SurfaceJet& j, const NormalPair& n) {
  const Forms1 g = forms1(j);
  const int eps = epsilon_of(g);
  const double W = g.W();
  if (!(W < 0)) throw DegenerateFrameError("W >= 0: surface not timelike here");
  FrameField f;
  f.epsilon = eps;
  f.e1 = j.Xu / std::sqrt(eps * g.g11);
  f.e2 = (g.g11 * j.Xv - g.g12 * j.Xu) / std::sqrt(-eps * W * g.g11);
  f.N1 = n.N1;
  f.N2 = n.N2;
  return f;
}

inline CurvatureData curvature_from(const Forms1& g, const Forms2& b) {
  const double W = g.W();
  CurvatureData c;
  c.H1 = (b.b1_11 * g.g22 - 2 * b.b1_12 * g.g12 + b.b1_22 * g.g11) / (2 * W);
  c.H2 = (b.b2_11 * g.g22 - 2 * b.b2_12 * g.g12 + b.b2_22 * g.g11) / (2 * W);
  c.K = (b.b1_11 * b.b1_22 - b.b1_12 * b.b1_12 + b.b2_11 * b.b2_22 - b.b2_12 * b.b2_12) / W;
  return c;
}

inline Bivector6 gauss_map_from(const SurfaceJet& j) {
  const Forms1 g = forms1(j);
  const double W = g.W();
  if (!(W < 0)) throw DomainError("gauss map: W >= 0");
  const int eps = g.g11 > 0 ? 1 : -1;
  return wedge(j.Xu, j.Xv) * (eps / std::sqrt(-W));
}

// Largest deviation of the ten frame pairings from their contracted values.
inline double frame_defect(const FrameField& f) {
  const double eps = f.epsilon;
  const double d[10] = {
      inner4(f.e1, f.e1) - eps, inner4(f.e2, f.e2) + eps, inner4(f.e1, f.e2),
      inner4(f.N1, f.N1) - 1,   inner4(f.N2, f.N2) - 1,   inner4(f.N1, f.N2),
      inner4(f.e1, f.N1),       inner4(f.e1, f.N2),       inner4(f.e2, f.N1),
      inner4(f.e2, f.N2)};
  double m = 0;
  for (double x : d) m = std::fmax(m, std::fabs(x));
  return m;
}

template <Surface S>
Forms1 first_fundamental(const S& s, double u, double v) {
  return forms1(s.jet(u, v));
}

template <Surface S>
FrameField frame(const S& s, double u, double v) {
  return tangent_frame(s.jet(u, v), s.normals(u, v));
}

template <Surface S>
Forms2 second_fundamental(const S& s, double u, double v) {
  return forms2(s.jet(u, v), s.normals(u, v));
}

template <Surface S>
CurvatureData curvature(const S& s, double u, double v) {
  const SurfaceJet j = s.jet(u, v);
  const Forms1 g = forms1(j);
  if (!(g.W() < 0)) throw DegenerateFrameError("W >= 0 at u=" + std::to_string(u));
  return curvature_from(g, forms2(j, s.normals(u, v)));
}

template <Surface S>
std::pair<double, double> mean_curvature(const S& s, double u, double v) {
  const CurvatureData c = curvature(s, u, v);
  return {c.H1, c.H2};
}

template <Surface S>
double gauss_curvature(const S& s, double u, double v) {
  return curvature(s, u, v).K;
}

template <Surface S>
Bivector6 gauss_map(const S& s, double u, double v) {
  return gauss_map_from(s.jet(u, v));
}

}  // namespace bour
