#pragma once
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bour/errors.hpp"
#include "bour/minkowski.hpp"
#include "bour/surfaces/geometry.hpp"
#include "bour/surfaces/profile.hpp"

namespace bour {

enum class HelicoidalKind { I, IIa, IIb, III };

inline const char* to_string(HelicoidalKind k) {
  switch (k) {
    case HelicoidalKind::I: return "I";
    case HelicoidalKind::IIa: return "IIa";
    case HelicoidalKind::IIb: return "IIb";
    default: return "III";
  }
}

inline HelicoidalKind parse_helicoidal_kind(const std::string& s) {
  if (s == "I") return HelicoidalKind::I;
  if (s == "IIa") return HelicoidalKind::IIa;
  if (s == "IIb") return HelicoidalKind::IIb;
  if (s == "III") return HelicoidalKind::III;
  throw InvalidArgument("unknown helicoidal kind '" + s + "' (expected I, IIa, IIb, III)");
}

struct SurfaceOptions {
  double clip = default_clip;
  bool validate = true;
  Interval v{};
  std::optional<std::vector<Interval>> pieces;  // skip zero splitting when given
};

namespace helicoidal {

inline SurfaceJet jet_from(HelicoidalKind kind, double lam, const ProfileJet& p, double v) {
  const Jet2 &x = p.x, &y = p.y, &z = p.z, &w = p.w;
  switch (kind) {
    case HelicoidalKind::I: {
      const double c = std::cos(v), s = std::sin(v);
      return {{x.v * c, x.v * s, z.v, w.v + lam * v},
              {x.d * c, x.d * s, z.d, w.d},
              {-x.v * s, x.v * c, 0, lam},
              {x.dd * c, x.dd * s, z.dd, w.dd},
              {-x.d * s, x.d * c, 0, 0},
              {-x.v * c, -x.v * s, 0, 0}};
    }
    case HelicoidalKind::IIa: {
      const double ch = std::cosh(v), sh = std::sinh(v);
      return {{x.v + lam * v, y.v, w.v * sh, w.v * ch},
              {x.d, y.d, w.d * sh, w.d * ch},
              {lam, 0, w.v * ch, w.v * sh},
              {x.dd, y.dd, w.dd * sh, w.dd * ch},
              {0, 0, w.d * ch, w.d * sh},
              {0, 0, w.v * sh, w.v * ch}};
    }
    case HelicoidalKind::IIb: {
      const double ch = std::cosh(v), sh = std::sinh(v);
      return {{x.v + lam * v, y.v, z.v * ch, z.v * sh},
              {x.d, y.d, z.d * ch, z.d * sh},
              {lam, 0, z.v * sh, z.v * ch},
              {x.dd, y.dd, z.dd * ch, z.dd * sh},
              {0, 0, z.d * sh, z.d * ch},
              {0, 0, z.v * ch, z.v * sh}};
    }
    case HelicoidalKind::III: {
      const double r2 = std::numbers::sqrt2;
      return {from_null_basis(x.v, r2 * v * w.v, z.v + v * v * w.v + lam * v, w.v),
              from_null_basis(x.d, r2 * v * w.d, z.d + v * v * w.d, w.d),
              from_null_basis(0, r2 * w.v, 2 * v * w.v + lam, 0),
              from_null_basis(x.dd, r2 * v * w.dd, z.dd + v * v * w.dd, w.dd),
              from_null_basis(0, r2 * w.d, 2 * v * w.d, 0),
              from_null_basis(0, 0, 2 * w.v, 0)};
    }
  }
  return {};
}

inline Forms1 closed_forms1(HelicoidalKind kind, double lam, const ProfileJet& p) {
  const double x = p.x.v, x1 = p.x.d, y1 = p.y.d, z = p.z.v, z1 = p.z.d, w = p.w.v, w1 = p.w.d;
  switch (kind) {
    case HelicoidalKind::I: return {x1 * x1 + z1 * z1 - w1 * w1, -lam * w1, x * x - lam * lam};
    case HelicoidalKind::IIa: return {x1 * x1 + y1 * y1 - w1 * w1, lam * x1, lam * lam + w * w};
    case HelicoidalKind::IIb: return {x1 * x1 + y1 * y1 + z1 * z1, lam * x1, lam * lam - z * z};
    case HelicoidalKind::III: return {x1 * x1 - 2 * w1 * z1, -lam * w1, 2 * w * w};
  }
  return {};
}

inline double closed_W(HelicoidalKind kind, double lam, const ProfileJet& p) {
  const double x = p.x.v, x1 = p.x.d, y1 = p.y.d, z = p.z.v, z1 = p.z.d, w = p.w.v, w1 = p.w.d;
  const double l2 = lam * lam;
  switch (kind) {
    case HelicoidalKind::I: return (x * x - l2) * (x1 * x1 + z1 * z1) - x * x * w1 * w1;
    case HelicoidalKind::IIa: return (l2 + w * w) * (y1 * y1 - w1 * w1) + x1 * x1 * w * w;
    case HelicoidalKind::IIb: return (l2 - z * z) * (y1 * y1 + z1 * z1) - x1 * x1 * z * z;
    case HelicoidalKind::III: return 2 * w * w * (x1 * x1 - 2 * w1 * z1) - l2 * w1 * w1;
  }
  return 0;
}

inline double require_timelike(double W) {
  if (!(W < 0)) throw DegenerateFrameError("W >= 0: no timelike frame");
  return W;
}

inline NormalPair normals_from(HelicoidalKind kind, double lam, const ProfileJet& p, double v) {
  const double x = p.x.v, x1 = p.x.d, y1 = p.y.d, z = p.z.v, z1 = p.z.d, w = p.w.v, w1 = p.w.d;
  const double W = require_timelike(closed_W(kind, lam, p));
  switch (kind) {
    case HelicoidalKind::I: {
      const double P = x1 * x1 + z1 * z1;
      if (!(P > 0)) throw DegenerateFrameError("type I frame: x'^2 + z'^2 = 0");
      const double c = std::cos(v), s = std::sin(v), rp = std::sqrt(P), d = std::sqrt(-W * P);
      return {{z1 * c / rp, z1 * s / rp, -x1 / rp, 0},
              {(x * x1 * w1 * c - lam * P * s) / d, (x * x1 * w1 * s + lam * P * c) / d, x * z1 * w1 / d, x * P / d}};
    }
    case HelicoidalKind::IIa: {
      const double Q = w1 * w1 - y1 * y1;
      if (!(Q > 0)) throw DegenerateFrameError("type IIa frame: w'^2 - y'^2 <= 0");
      const double ch = std::cosh(v), sh = std::sinh(v), rq = std::sqrt(Q), d = std::sqrt(-W * Q);
      return {{0, w1 / rq, y1 * sh / rq, y1 * ch / rq},
              {-w * Q / d, -w * x1 * y1 / d, (lam * Q * ch - x1 * w * w1 * sh) / d, (lam * Q * sh - x1 * w * w1 * ch) / d}};
    }
    case HelicoidalKind::IIb: {
      const double Q = y1 * y1 + z1 * z1;
      if (!(Q > 0)) throw DegenerateFrameError("type IIb frame: y'^2 + z'^2 = 0");
      const double ch = std::cosh(v), sh = std::sinh(v), rq = std::sqrt(Q), d = std::sqrt(-W * Q);
      return {{0, -z1 / rq, y1 * ch / rq, y1 * sh / rq},
              {-z * Q / d, z * x1 * y1 / d, (x1 * z * z1 * ch - lam * Q * sh) / d, (x1 * z * z1 * sh - lam * Q * ch) / d}};
    }
    case HelicoidalKind::III: {
      if (w1 == 0) throw DegenerateFrameError("type III frame: w' = 0");
      const double r2 = std::numbers::sqrt2, d = w1 * std::sqrt(-W);
      const double w12 = w1 * w1;
      return {from_null_basis(1, 0, x1 / w1, 0),
              from_null_basis(r2 * x1 * w * w1, lam * w12 + 2 * v * w * w12,
                              r2 * (lam * v * w12 + v * v * w * w12 + w * x1 * x1 - w * w1 * z1), r2 * w * w12) /
                  d};
    }
  }
  return {};
}

inline Forms2 closed_forms2(HelicoidalKind kind, double lam, const ProfileJet& p) {
  const double x = p.x.v, x1 = p.x.d, x2 = p.x.dd, y1 = p.y.d, y2 = p.y.dd;
  const double z = p.z.v, z1 = p.z.d, z2 = p.z.dd, w = p.w.v, w1 = p.w.d, w2 = p.w.dd;
  const double W = require_timelike(closed_W(kind, lam, p));
  const double rW = std::sqrt(-W);
  switch (kind) {
    case HelicoidalKind::I: {
      const double P = x1 * x1 + z1 * z1, rp = std::sqrt(P), d = rW * rp;
      if (!(P > 0)) throw DegenerateFrameError("type I frame: x'^2 + z'^2 = 0");
      return {(x2 * z1 - x1 * z2) / rp, 0, -x * z1 / rp,
              x * (w1 * (x1 * x2 + z1 * z2) - w2 * P) / d, lam * x1 * rp / rW, -x * x * x1 * w1 / d};
    }
    case HelicoidalKind::IIa: {
      const double Q = w1 * w1 - y1 * y1;
      if (!(Q > 0)) throw DegenerateFrameError("type IIa frame: w'^2 - y'^2 <= 0");
      const double rq = std::sqrt(Q), d = rW * rq;
      return {(y2 * w1 - y1 * w2) / rq, 0, -w * y1 / rq,
              w * (x1 * (w1 * w2 - y1 * y2) - x2 * Q) / d, lam * w1 * rq / rW, x1 * w * w * w1 / d};
    }
    case HelicoidalKind::IIb: {
      const double Q = y1 * y1 + z1 * z1;
      if (!(Q > 0)) throw DegenerateFrameError("type IIb frame: y'^2 + z'^2 = 0");
      const double rq = std::sqrt(Q), d = rW * rq;
      return {(y1 * z2 - y2 * z1) / rq, 0, z * y1 / rq,
              z * (x1 * (y1 * y2 + z1 * z2) - x2 * Q) / d, lam * z1 * rq / rW, x1 * z * z * z1 / d};
    }
    case HelicoidalKind::III: {
      if (w1 == 0) throw DegenerateFrameError("type III frame: w' = 0");
      const double r2 = std::numbers::sqrt2;
      return {(x2 * w1 - x1 * w2) / w1, 0, 0,
              r2 * w * (x1 * x2 * w1 - x1 * x1 * w2 + w1 * (z1 * w2 - w1 * z2)) / (w1 * rW),
              r2 * lam * w1 * w1 / rW, -2 * r2 * w * w * w1 / rW};
    }
  }
  return {};
}

// Mean curvature components along the closed-form normals, expanded per kind.
inline std::pair<double, double> closed_mean_curvature(HelicoidalKind kind, double lam, const ProfileJet& p) {
  const double x = p.x.v, x1 = p.x.d, x2 = p.x.dd, y1 = p.y.d, y2 = p.y.dd;
  const double z = p.z.v, z1 = p.z.d, z2 = p.z.dd, w = p.w.v, w1 = p.w.d, w2 = p.w.dd;
  const double l2 = lam * lam;
  const double W = require_timelike(closed_W(kind, lam, p));
  const double W3 = std::sqrt(-W * W * W);
  switch (kind) {
    case HelicoidalKind::I: {
      const double P = x1 * x1 + z1 * z1, rp = std::sqrt(P);
      const double H1 = ((x * x - l2) * (x2 * z1 - x1 * z2) - x * z1 * (P - w1 * w1)) / (2 * W * rp);
      const double H2 = -(x1 * w1 * (2 * l2 - x * x) * P + x * x * x1 * w1 * w1 * w1 -
                          x * (x * x - l2) * (x1 * (x1 * w2 - x2 * w1) + z1 * (z1 * w2 - w1 * z2))) /
                        (2 * W3 * rp);
      return {H1, H2};
    }
    case HelicoidalKind::IIa: {
      const double Q = w1 * w1 - y1 * y1, rq = std::sqrt(Q);
      const double H1 = ((l2 + w * w) * (y2 * w1 - y1 * w2) - w * y1 * (x1 * x1 + y1 * y1 - w1 * w1)) / (2 * W * rq);
      const double H2 = -(-x1 * w1 * (2 * l2 + w * w) * Q + x1 * x1 * x1 * w * w * w1 +
                          w * (l2 + w * w) * (-x2 * Q + x1 * (w1 * w2 - y1 * y2))) /
                        (2 * W3 * rq);
      return {H1, H2};
    }
    case HelicoidalKind::IIb: {
      const double Q = y1 * y1 + z1 * z1, rq = std::sqrt(Q);
      const double H1 = ((l2 - z * z) * (y1 * z2 - z1 * y2) + z * y1 * (x1 * x1 + y1 * y1 + z1 * z1)) / (2 * W * rq);
      const double H2 = -(x1 * z1 * ((z * z - 2 * l2) * Q + z * z * (x1 * x1 - z * z2)) +
                          l2 * z * (x1 * (z1 * z2 + y1 * y2) - x2 * Q) + z * z * z * (x2 * Q - x1 * y1 * y2)) /
                        (2 * W3 * rq);
      return {H1, H2};
    }
    case HelicoidalKind::III: {
      const double r2 = std::numbers::sqrt2;
      const double H1 = w * w * (x2 * w1 - x1 * w2) / (w1 * W);
      const double H2 = -r2 *
                        (l2 * w1 * w1 * w1 * w1 + 2 * w * w * w1 * w1 * w1 * z1 - w * w * w * x1 * x1 * w2 +
                         w * w * w * w1 * (z1 * w2 + x1 * x2) - w * w * w1 * w1 * (x1 * x1 + w * z2)) /
                        (w1 * W3);
      return {H1, H2};
    }
  }
  return {0, 0};
}

// Gauss map from the expanded wedge of the coordinate partials.
inline Bivector6 closed_gauss_map(HelicoidalKind kind, double lam, const ProfileJet& p, double v) {
  const double x = p.x.v, x1 = p.x.d, y1 = p.y.d, z = p.z.v, z1 = p.z.d, w = p.w.v, w1 = p.w.d;
  const double W = closed_W(kind, lam, p);
  if (!(W < 0)) throw DomainError("gauss map: W >= 0");
  const double g11 = closed_forms1(kind, lam, p).g11;
  const double k = (g11 > 0 ? 1.0 : -1.0) / std::sqrt(-W);
  Bivector6 b;
  switch (kind) {
    case HelicoidalKind::I: {
      const double c = std::cos(v), s = std::sin(v);
      b = {{x * x1, x * z1 * s, lam * x1 * c + x * w1 * s, -x * z1 * c, lam * x1 * s - x * w1 * c, lam * z1}};
      break;
    }
    case HelicoidalKind::IIa: {
      const double ch = std::cosh(v), sh = std::sinh(v);
      b = {{-lam * y1, x1 * w * ch - lam * w1 * sh, x1 * w * sh - lam * w1 * ch, y1 * w * ch, y1 * w * sh, -w * w1}};
      break;
    }
    case HelicoidalKind::IIb: {
      const double ch = std::cosh(v), sh = std::sinh(v);
      b = {{-lam * y1, x1 * z * sh - lam * z1 * ch, x1 * z * ch - lam * z1 * sh, y1 * z * sh, y1 * z * ch, z * z1}};
      break;
    }
    case HelicoidalKind::III: {
      const double r2 = std::numbers::sqrt2;
      const NullBasis nb = null_basis();
      const double t = lam + 2 * v * w;
      b = wedge(eta1, eta2) * (r2 * x1 * w) + wedge(eta1, nb.xi3) * (x1 * t) +
          wedge(eta2, nb.xi3) * (r2 * (v * v * w * w1 - w * z1 + lam * v * w1)) +
          wedge(eta2, nb.xi4) * (-r2 * w * w1) + wedge(nb.xi3, nb.xi4) * (-w1 * t);
      break;
    }
  }
  return b * k;
}

}  // namespace helicoidal

class HelicoidalSurface {
 public:
  HelicoidalSurface(HelicoidalKind kind, ProfileCurve profile, double lambda, SurfaceOptions opt = {})
      : kind_(kind), profile_(std::move(profile)), lambda_(lambda) {
    if (!(lambda >= 0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be finite and non-negative");
    domain_.v = opt.v;
    const Interval iv = profile_.interval;
    if (!(iv.lo < iv.hi)) throw InvalidArgument("profile interval must be nonempty");
    if (opt.pieces) {
      domain_.pieces = *opt.pieces;
    } else {
      const char* name = kind == HelicoidalKind::I ? "x(u)" : kind == HelicoidalKind::IIb ? "z(u)" : "w(u)";
      const ScalarFn& f = kind == HelicoidalKind::I ? profile_.x : kind == HelicoidalKind::IIb ? profile_.z : profile_.w;
      domain_.pieces = split_at_zeros([&f](double u) { return f(u); }, iv, opt.clip, name);
    }
    if (opt.validate) validate();
  }

  HelicoidalKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  const ProfileCurve& profile() const { return profile_; }
  const Domain& domain() const { return domain_; }

  ProfileJet profile_jet_at(double u) const { return profile_jet(profile_, u); }

  SurfaceJet jet(double u, double v) const {
    domain_.require(u, v);
    return helicoidal::jet_from(kind_, lambda_, profile_jet_at(u), v);
  }
  Vec4 eval(double u, double v) const { return jet(u, v).X; }
  NormalPair normals(double u, double v) const {
    domain_.require(u, v);
    return helicoidal::normals_from(kind_, lambda_, profile_jet_at(u), v);
  }

 private:
  // regularity, nonvanishing conditions and W < 0 on a 64 x 64 sample per piece
  void validate() const {
    constexpr int n = 64;
    const Interval vr = std::isfinite(domain_.v.lo) && std::isfinite(domain_.v.hi) ? domain_.v : Interval{-std::numbers::pi, std::numbers::pi};
    for (const Interval& piece : domain_.pieces) {
      int w1_sign = 0;
      for (int i = 0; i < n; ++i) {
        const double u = piece.lo + piece.length() * i / (n - 1);
        const ProfileJet p = profile_jet_at(u);
        const double speed = std::fmax(std::fmax(std::fabs(p.x.d), std::fabs(p.y.d)), std::fmax(std::fabs(p.z.d), std::fabs(p.w.d)));
        if (!(speed > 1e-9)) throw DomainError("profile curve not regular at u=" + std::to_string(u));
        if (kind_ == HelicoidalKind::III && !(std::fabs(p.w.d) > 1e-12))
          throw DomainError("type III requires w'(u) != 0; w' vanishes near u=" + std::to_string(u));
        if (kind_ == HelicoidalKind::III) {
          const int sg = p.w.d > 0 ? 1 : -1;
          if (w1_sign != 0 && sg != w1_sign)
            throw DomainError("type III requires w'(u) != 0; w' changes sign before u=" + std::to_string(u));
          w1_sign = sg;
        }
        for (int j = 0; j < n; ++j) {
          const double v = vr.lo + vr.length() * j / (n - 1);
          const double W = forms1(helicoidal::jet_from(kind_, lambda_, p, v)).W();
          if (!(W < 0))
            throw DomainError("surface is not timelike: W=" + std::to_string(W) + " at (u,v)=(" + std::to_string(u) +
                              "," + std::to_string(v) + ")");
        }
      }
    }
  }

  HelicoidalKind kind_;
  ProfileCurve profile_;
  double lambda_;
  Domain domain_;
};

inline Forms1 closed_first_fundamental(const HelicoidalSurface& X, double u) {
  return helicoidal::closed_forms1(X.kind(), X.lambda(), X.profile_jet_at(u));
}
inline double closed_W(const HelicoidalSurface& X, double u) {
  return helicoidal::closed_W(X.kind(), X.lambda(), X.profile_jet_at(u));
}
inline Forms2 closed_second_fundamental(const HelicoidalSurface& X, double u) {
  return helicoidal::closed_forms2(X.kind(), X.lambda(), X.profile_jet_at(u));
}
inline std::pair<double, double> closed_mean_curvature(const HelicoidalSurface& X, double u) {
  return helicoidal::closed_mean_curvature(X.kind(), X.lambda(), X.profile_jet_at(u));
}
inline Bivector6 closed_gauss_map(const HelicoidalSurface& X, double u, double v) {
  return helicoidal::closed_gauss_map(X.kind(), X.lambda(), X.profile_jet_at(u), v);
}

}  // namespace bour
