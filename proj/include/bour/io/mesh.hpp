#pragma once
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bour/errors.hpp"
#include "bour/minkowski.hpp"
#include "bour/surfaces/profile.hpp"
#include "bour/verify.hpp"

namespace bour {

enum class MeshFormat { Csv, Obj, Json };

inline MeshFormat parse_mesh_format(const std::string& s) {
  if (s == "csv") return MeshFormat::Csv;
  if (s == "obj") return MeshFormat::Obj;
  if (s == "json") return MeshFormat::Json;
  throw InvalidArgument("unknown mesh format '" + s + "' (expected csv, obj, json)");
}

inline const char* extension(MeshFormat f) { return f == MeshFormat::Csv ? "csv" : f == MeshFormat::Obj ? "obj" : "json"; }

struct MeshFile {
  int nu = 0, nv = 0;
  std::vector<double> u, v;
  std::vector<Vec4> points;                // row-major in u then v
  std::vector<std::array<double, 3>> projected;
  std::vector<std::array<int, 4>> faces;  // zero-based quads
  int dropped = 1;                         // coordinate index removed by the projection
  bool hyperplanar = false;                // dropped coordinate is constant
};

inline int parse_projection(const std::string& s) {
  if (s == "x1") return 0;
  if (s == "x2") return 1;
  if (s == "x3") return 2;
  if (s == "x4") return 3;
  throw InvalidArgument("projection must be one of x1, x2, x3, x4");
}

// Samples eval on the grid. A constant coordinate is dropped (hyperplanar
// surface); otherwise `project` (default x2) is. Quads never straddle a gap
// between domain pieces.
inline MeshFile export_mesh(const std::function<Vec4(double, double)>& eval, const Domain& d, int nu, int nv,
                            std::optional<int> project = std::nullopt) {
  if (nu < 2 || nv < 2) throw InvalidArgument("mesh needs at least 2 x 2 samples");
  const Grid g = Grid::over(d, nu, nv);
  MeshFile m;
  m.nu = int(g.u.size());
  m.nv = int(g.v.size());
  m.u = g.u;
  m.v = g.v;
  for (double u : g.u)
    for (double v : g.v) m.points.push_back(eval(u, v));

  std::array<double, 4> lo, hi;
  lo.fill(INFINITY);
  hi.fill(-INFINITY);
  double scale = 0;
  for (const Vec4& p : m.points)
    for (int k = 0; k < 4; ++k) {
      lo[k] = std::fmin(lo[k], p[k]);
      hi[k] = std::fmax(hi[k], p[k]);
      scale = std::fmax(scale, std::fabs(p[k]));
    }
  std::optional<int> constant;
  for (int k = 0; k < 4 && !constant; ++k)
    if (hi[k] - lo[k] <= 1e-12 * (1 + scale)) constant = k;
  if (project) {
    m.dropped = *project;
    m.hyperplanar = constant && *constant == *project;
  } else if (constant) {
    m.dropped = *constant;
    m.hyperplanar = true;
  } else {
    m.dropped = 1;
  }
  for (const Vec4& p : m.points) {
    std::array<double, 3> q{};
    for (int k = 0, j = 0; k < 4; ++k)
      if (k != m.dropped) q[j++] = p[k];
    m.projected.push_back(q);
  }
  for (int i = 0; i + 1 < m.nu; ++i) {
    if (d.piece_index(g.u[i]) != d.piece_index(g.u[i + 1])) continue;
    for (int j = 0; j + 1 < m.nv; ++j) {
      const int a = i * m.nv + j;
      m.faces.push_back({a, a + m.nv, a + m.nv + 1, a + 1});
    }
  }
  return m;
}

template <Surface S>
MeshFile export_mesh(const S& s, const Domain& d, int nu, int nv, std::optional<int> project = std::nullopt) {
  return export_mesh([&s](double u, double v) { return s.eval(u, v); }, d, nu, nv, project);
}

namespace detail {

inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline std::string mesh_text(const MeshFile& m, MeshFormat f) {
  std::ostringstream o;
  const std::string drop = "x" + std::to_string(m.dropped + 1);
  switch (f) {
    case MeshFormat::Csv:
      o << "u,v,x1,x2,x3,x4\n";
      for (std::size_t k = 0; k < m.points.size(); ++k) {
        const Vec4& p = m.points[k];
        o << detail::g17(m.u[k / m.nv]) << ',' << detail::g17(m.v[k % m.nv]) << ',' << detail::g17(p.x1) << ','
          << detail::g17(p.x2) << ',' << detail::g17(p.x3) << ',' << detail::g17(p.x4) << '\n';
      }
      break;
    case MeshFormat::Obj:
      o << "# " << m.nu << "x" << m.nv << " grid, dropped " << drop << (m.hyperplanar ? " (constant)" : "") << '\n';
      for (const auto& q : m.projected)
        o << "v " << detail::g17(q[0]) << ' ' << detail::g17(q[1]) << ' ' << detail::g17(q[2]) << '\n';
      for (const auto& fc : m.faces)
        o << "f " << fc[0] + 1 << ' ' << fc[1] + 1 << ' ' << fc[2] + 1 << ' ' << fc[3] + 1 << '\n';
      break;
    case MeshFormat::Json: {
      nlohmann::json j;
      j["nu"] = m.nu;
      j["nv"] = m.nv;
      j["dropped"] = drop;
      j["hyperplanar"] = m.hyperplanar;
      j["vertices"] = nlohmann::json::array();
      for (std::size_t k = 0; k < m.points.size(); ++k) {
        const Vec4& p = m.points[k];
        j["vertices"].push_back({{"u", m.u[k / m.nv]},
                                 {"v", m.v[k % m.nv]},
                                 {"x", {p.x1, p.x2, p.x3, p.x4}},
                                 {"p", m.projected[k]}});
      }
      j["faces"] = m.faces;
      o << j.dump(1) << '\n';
      break;
    }
  }
  return o.str();
}

inline void write_mesh(const MeshFile& m, MeshFormat f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << mesh_text(m, f);
}

}  // namespace bour
