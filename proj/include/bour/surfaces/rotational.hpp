#pragma once
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bour/errors.hpp"
#include "bour/surfaces/geometry.hpp"
#include "bour/surfaces/helicoidal.hpp"

namespace bour {

enum class RotationalKind { EllipticR1, HyperbolicR2a, HyperbolicR2b, ParabolicR3 };

inline const char* to_string(RotationalKind k) {
  switch (k) {
    case RotationalKind::EllipticR1: return "EllipticR1";
    case RotationalKind::HyperbolicR2a: return "HyperbolicR2a";
    case RotationalKind::HyperbolicR2b: return "HyperbolicR2b";
    default: return "ParabolicR3";
  }
}

// n, p, r, s as functions of the meridian parameter k
struct RotationalComponents {
  ScalarFn n = ScalarFn::constant(0);
  ScalarFn p = ScalarFn::constant(0);
  ScalarFn r = ScalarFn::constant(0);
  ScalarFn s = ScalarFn::constant(0);
  Interval interval{0, 1};
};

// R1 = (n cos t, n sin t, s, r), R2a = (n, p, r sinh t, r cosh t),
// R2b = (n, p, s cosh t, s sinh t), R3 = n e1 + sqrt2 t r e2 + (s + t^2 r) xi3 + r xi4.
// Each is the pitch-zero helicoidal surface of the matching kind.
class RotationalSurface {
 public:
  RotationalSurface(RotationalKind kind, RotationalComponents c, std::vector<Interval> pieces, bool validate = true)
      : kind_(kind), comp_(std::move(c)), core_(make_core(kind_, comp_, std::move(pieces), validate)) {
    if (validate) check_radius();
  }

  RotationalKind kind() const { return kind_; }
  const RotationalComponents& components() const { return comp_; }
  const Domain& domain() const { return core_.domain(); }
  const HelicoidalSurface& as_helicoidal() const { return core_; }

  const ScalarFn& radius_fn() const {
    switch (kind_) {
      case RotationalKind::EllipticR1: return comp_.n;
      case RotationalKind::HyperbolicR2b: return comp_.s;
      default: return comp_.r;
    }
  }
  double radius(double k) const {
    if (!domain().contains_u(k)) throw DomainError("radius: k=" + std::to_string(k) + " outside domain");
    return radius_fn()(k);
  }

  SurfaceJet jet(double k, double t) const { return core_.jet(k, t); }
  Vec4 eval(double k, double t) const { return core_.eval(k, t); }
  NormalPair normals(double k, double t) const { return core_.normals(k, t); }

 private:
  static HelicoidalSurface make_core(RotationalKind kind, const RotationalComponents& c, std::vector<Interval> pieces,
                                     bool validate) {
    ProfileCurve prof;
    prof.interval = c.interval;
    HelicoidalKind hk = HelicoidalKind::I;
    switch (kind) {
      case RotationalKind::EllipticR1:
        prof.x = c.n, prof.z = c.s, prof.w = c.r;
        break;
      case RotationalKind::HyperbolicR2a:
        hk = HelicoidalKind::IIa, prof.x = c.n, prof.y = c.p, prof.w = c.r;
        break;
      case RotationalKind::HyperbolicR2b:
        hk = HelicoidalKind::IIb, prof.x = c.n, prof.y = c.p, prof.z = c.s;
        break;
      case RotationalKind::ParabolicR3:
        hk = HelicoidalKind::III, prof.x = c.n, prof.z = c.s, prof.w = c.r;
        break;
    }
    SurfaceOptions opt;
    opt.pieces = std::move(pieces);
    opt.validate = validate;
    return HelicoidalSurface(hk, std::move(prof), 0.0, opt);
  }

  void check_radius() const {
    for (const Interval& piece : domain().pieces)
      for (int i = 0; i <= 64; ++i) {
        const double k = piece.lo + piece.length() * i / 64;
        const double rho = radius_fn()(k);
        const bool ok = kind_ == RotationalKind::ParabolicR3 ? rho != 0 : rho > 0;
        if (!ok || !std::isfinite(rho)) throw DomainError("rotational radius not admissible at k=" + std::to_string(k));
      }
  }

  RotationalKind kind_;
  RotationalComponents comp_;
  HelicoidalSurface core_;
};

// S expressed in shifted coordinates: (u, v) -> S(u, v + offset(u)).
template <Surface S>
class Pullback {
 public:
  Pullback(S base, ScalarFn offset) : base_(std::move(base)), offset_(std::move(offset)) {}

  const S& base() const { return base_; }
  const ScalarFn& offset() const { return offset_; }
  std::pair<double, double> mapped(double u, double v) const { return {u, v + offset_(u)}; }

  SurfaceJet jet(double u, double v) const {
    const Jet2 psi = bour::jet(offset_, u);
    const SurfaceJet b = base_.jet(u, v + psi.v);
    const double p1 = psi.d, p2 = psi.dd;
    return {b.X,
            b.Xu + p1 * b.Xv,
            b.Xv,
            b.Xuu + (2 * p1) * b.Xuv + (p1 * p1) * b.Xvv + p2 * b.Xv,
            b.Xuv + p1 * b.Xvv,
            b.Xvv};
  }
  Vec4 eval(double u, double v) const { return base_.eval(u, v + offset_(u)); }
  NormalPair normals(double u, double v) const { return base_.normals(u, v + offset_(u)); }

 private:
  S base_;
  ScalarFn offset_;
};

enum class FiberTag { EuclideanCircle, SpacelikeHyperbola, TimelikeHyperbola, SpacelikeParabola };

inline const char* to_string(FiberTag t) {
  switch (t) {
    case FiberTag::EuclideanCircle: return "EuclideanCircle";
    case FiberTag::SpacelikeHyperbola: return "SpacelikeHyperbola";
    case FiberTag::TimelikeHyperbola: return "TimelikeHyperbola";
    default: return "SpacelikeParabola";
  }
}

struct FiberClass {
  FiberTag tag;
  double scale;  // radius for circles and hyperbolas, |r| for the parabola
};

// Classifies the curve t -> R(u0, t) from the causal characters of its
// velocity and acceleration at t = 0.
inline FiberClass classify_fiber(const RotationalSurface& R, double u0) {
  if (!R.domain().contains_u(u0)) throw DomainError("classify_fiber: u0 outside domain");
  const SurfaceJet j = R.jet(u0, 0.0);
  const Vec4 T = j.Xv, A = j.Xvv;
  const double tt = inner4(T, T), aa = inner4(A, A);
  const CausalClass ct = causal_character(T), ca = causal_character(A);
  if (ct == CausalClass::Spacelike && ca == CausalClass::Spacelike) return {FiberTag::EuclideanCircle, tt / std::sqrt(aa)};
  if (ct == CausalClass::Spacelike && ca == CausalClass::Timelike) return {FiberTag::SpacelikeHyperbola, tt / std::sqrt(-aa)};
  if (ct == CausalClass::Timelike && ca == CausalClass::Spacelike) return {FiberTag::TimelikeHyperbola, -tt / std::sqrt(aa)};
  if (ct == CausalClass::Spacelike && ca == CausalClass::Lightlike) return {FiberTag::SpacelikeParabola, std::sqrt(tt / 2)};
  throw DomainError(std::string("classify_fiber: unexpected causal pair ") + to_string(ct) + "/" + to_string(ca));
}

}  // namespace bour
