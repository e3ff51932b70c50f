#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bour/bour/correspondence.hpp"
#include "bour/bour/minimal.hpp"
#include "bour/errors.hpp"
#include "bour/numerics/expr.hpp"
#include "bour/verify.hpp"

// JSON surface description:
//
//   {
//     "kind": "I" | "IIa" | "IIb" | "III",
//     "lambda": 1.0,
//     "profile": {"x": "u", "y": "0", "z": "0", "w": "u^2"},   absent slots are "0"
//     "domain": {"u": [1.32, 1.72], "v": [0, 6.283185307179586], "nu": 20, "nv": 20},
//     "branch": "R1_1",                                          optional
//     "ab": {"a": "0", "b": "auto", "check": true},              optional; "auto" solves the constraint
//     "family": {"c1": 0, "c2": 0, "c3": -0.5, "c4": 0, "sign": 1, "free": "u"}   optional
//   }
//
// With "family" present the profile is generated and "profile" is ignored.

namespace bour {

struct AbSpec {
  std::string a = "0", b = "auto";
  bool check = true;
};

struct FamilySpec {
  MinimalFamilyParams params;
  std::string free = "u";
};

struct SurfaceSpec {
  std::string kind = "I";
  double lambda = 0;
  std::map<std::string, std::string> profile;
  Interval u{0, 1}, v{0, 1};
  int nu = 20, nv = 20;
  std::optional<std::string> branch;
  std::optional<AbSpec> ab;
  std::optional<FamilySpec> family;
};

namespace detail {

inline Interval interval_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("domain.") + key + " is required");
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
    throw InvalidArgument(std::string("domain.") + key + " must be [lo, hi]");
  Interval iv{a[0].get<double>(), a[1].get<double>()};
  if (!(iv.lo < iv.hi)) throw InvalidArgument(std::string("domain.") + key + " must be nonempty");
  return iv;
}

inline std::string expr_field(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw InvalidArgument("expressions must be strings or numbers");
}

}  // namespace detail

inline SurfaceSpec parse_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("spec must be a JSON object");
  SurfaceSpec s;
  try {
    s.kind = j.at("kind").get<std::string>();
    s.lambda = j.at("lambda").get<double>();
    parse_helicoidal_kind(s.kind);
    if (j.contains("profile")) {
      for (const auto& [k, val] : j.at("profile").items()) {
        if (k != "x" && k != "y" && k != "z" && k != "w") throw InvalidArgument("unknown profile slot '" + k + "'");
        s.profile[k] = detail::expr_field(val);
      }
    }
    const auto& d = j.at("domain");
    s.u = detail::interval_field(d, "u");
    s.v = detail::interval_field(d, "v");
    s.nu = d.value("nu", 20);
    s.nv = d.value("nv", 20);
    if (s.nu < 2 || s.nv < 2) throw InvalidArgument("domain.nu and domain.nv must be at least 2");
    if (j.contains("branch")) s.branch = j.at("branch").get<std::string>();
    if (j.contains("ab")) {
      AbSpec ab;
      const auto& a = j.at("ab");
      if (a.contains("a")) ab.a = detail::expr_field(a.at("a"));
      if (a.contains("b")) ab.b = detail::expr_field(a.at("b"));
      ab.check = a.value("check", true);
      s.ab = ab;
    }
    if (j.contains("family")) {
      const auto& f = j.at("family");
      FamilySpec fs;
      fs.params.lambda = s.lambda;
      fs.params.c1 = f.value("c1", 0.0);
      fs.params.c2 = f.value("c2", 0.0);
      fs.params.c3 = f.at("c3").get<double>();
      fs.params.c4 = f.value("c4", 0.0);
      fs.params.sign = f.value("sign", 1);
      if (f.contains("free")) fs.free = detail::expr_field(f.at("free"));
      s.family = fs;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("spec: ") + e.what());
  }
  return s;
}

// Parses one expression, prefixing ParseError messages with the slot name.
struct SlotParseError : ParseError {
  std::string slot;
  SlotParseError(std::string s, const ParseError& e) : ParseError(e), slot(std::move(s)) {}
};

inline ScalarFn compile_expr(const std::string& slot, const std::string& text, Interval iv) {
  try {
    const ExprAst ast = parse_expr(text);
    if (ast.is_constant()) {
      ScalarFn c = ScalarFn::constant(ast(0.0));
      return c.restricted(iv);
    }
    return ast.to_scalar_fn(iv);
  } catch (const ParseError& e) {
    throw SlotParseError(slot, e);
  }
}

inline ProfileCurve build_profile(const SurfaceSpec& s) {
  ProfileCurve p;
  p.interval = s.u;
  auto slot = [&](const char* k) {
    auto it = s.profile.find(k);
    return compile_expr(std::string("profile.") + k, it == s.profile.end() ? "0" : it->second, s.u);
  };
  p.x = slot("x");
  p.y = slot("y");
  p.z = slot("z");
  p.w = slot("w");
  return p;
}

inline HelicoidalSurface build_surface(const SurfaceSpec& s, double clip = default_clip) {
  SurfaceOptions opt;
  opt.v = s.v;
  opt.clip = clip;
  return HelicoidalSurface(parse_helicoidal_kind(s.kind), build_profile(s), s.lambda, opt);
}

inline Branch spec_branch(const SurfaceSpec& s, const std::optional<std::string>& override_branch) {
  const std::optional<std::string> name = override_branch ? override_branch : s.branch;
  if (!name) throw InvalidArgument("a branch is required (--branch or \"branch\" in the spec)");
  return parse_branch(*name);
}

// Bour functions from the spec; "auto" in one slot solves the constraint for it.
inline BourFunctions build_ab(const HelicoidalSurface& X, Branch br, const SurfaceSpec& s) {
  const AbSpec ab = s.ab.value_or(AbSpec{});
  if (ab.a == "auto" && ab.b == "auto") throw InvalidArgument("at most one of ab.a, ab.b may be \"auto\"");
  BourFunctions f;
  if (ab.a == "auto") {
    f.b = compile_expr("ab.b", ab.b, s.u);
    f.a = complete_ab(X, br, f.b, Unknown::A);
  } else if (ab.b == "auto") {
    f.a = compile_expr("ab.a", ab.a, s.u);
    f.b = complete_ab(X, br, f.a, Unknown::B);
  } else {
    f.a = compile_expr("ab.a", ab.a, s.u);
    f.b = compile_expr("ab.b", ab.b, s.u);
  }
  return f;
}

inline MinimalFamily build_family(const SurfaceSpec& s, Branch br) {
  if (!s.family) throw InvalidArgument("spec has no \"family\" block");
  const ScalarFn free = compile_expr("family.free", s.family->free, s.u);
  return minimal_family(parse_helicoidal_kind(s.kind), br, s.family->params, free, {}, s.v);
}

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["tol"] = r.tol;
  j["max_residual"] = r.max_residual;
  j["min_residual"] = r.min_residual;
  j["pass"] = r.pass;
  j["excluded_points"] = nlohmann::json::array();
  for (const auto& [u, v] : r.excluded_points) j["excluded_points"].push_back({u, v});
  j["notes"] = r.notes;
  return j;
}

inline nlohmann::json to_json(const Bivector6& b) { return nlohmann::json(b.c); }

}  // namespace bour
