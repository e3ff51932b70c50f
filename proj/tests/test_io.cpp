#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "bour/examples.hpp"
#include "bour/io/mesh.hpp"
#include "bour/io/spec.hpp"

using namespace bour;
using nlohmann::json;

namespace {

json spec_json() {
  return json::parse(R"({
    "kind": "I", "lambda": 0.5,
    "profile": {"x": "u", "z": "0.3*u", "w": "u^2"},
    "domain": {"u": [1, 2], "v": [0, 6.283185307179586], "nu": 12, "nv": 14},
    "branch": "R1_1",
    "ab": {"a": "0.2", "b": "auto"}
  })");
}

}  // namespace

TEST(Spec, ParsesFields) {
  const SurfaceSpec s = parse_spec(spec_json());
  EXPECT_EQ(s.kind, "I");
  EXPECT_EQ(s.lambda, 0.5);
  EXPECT_EQ(s.profile.at("z"), "0.3*u");
  EXPECT_EQ(s.nu, 12);
  EXPECT_EQ(s.nv, 14);
  ASSERT_TRUE(s.ab.has_value());
  EXPECT_EQ(s.ab->b, "auto");
  EXPECT_TRUE(s.ab->check);
}

TEST(Spec, BuildsSurfaceAndCompletesConstraint) {
  const SurfaceSpec s = parse_spec(spec_json());
  const HelicoidalSurface X = build_surface(s);
  EXPECT_NEAR(X.eval(1.5, 0).x4, 2.25, 1e-15);
  const BourFunctions ab = build_ab(X, spec_branch(s, std::nullopt), s);
  for (double u : {1.1, 1.5, 1.9}) EXPECT_NEAR(ab_constraint_residual(X, Branch::R1_1, ab, u), 0, 1e-12);
}

TEST(Spec, MissingFieldsAreInvalid) {
  json j = spec_json();
  j.erase("kind");
  EXPECT_THROW(parse_spec(j), InvalidArgument);
  j = spec_json();
  j["domain"]["u"] = {2, 1};
  EXPECT_THROW(parse_spec(j), InvalidArgument);
  j = spec_json();
  j["profile"]["q"] = "u";
  EXPECT_THROW(parse_spec(j), InvalidArgument);
  EXPECT_THROW(parse_spec(json::array()), InvalidArgument);
}

TEST(Spec, ExpressionErrorNamesSlotAndOffset) {
  json j = spec_json();
  j["profile"]["w"] = "sin(u";
  const SurfaceSpec s = parse_spec(j);
  try {
    build_surface(s);
    FAIL() << "expected a parse error";
  } catch (const SlotParseError& e) {
    EXPECT_EQ(e.slot, "profile.w");
    EXPECT_EQ(e.offset, 5u);
  }
}

TEST(Spec, BranchRequired) {
  json j = spec_json();
  j.erase("branch");
  const SurfaceSpec s = parse_spec(j);
  EXPECT_THROW(spec_branch(s, std::nullopt), InvalidArgument);
  EXPECT_EQ(spec_branch(s, std::string("R1_2")), Branch::R1_2);
}

TEST(Spec, FamilyBlock) {
  const SurfaceSpec s = parse_spec(json::parse(R"({
    "kind": "IIa", "lambda": 1, "domain": {"u": [1.19, 10], "v": [-1.5, 1.5]},
    "family": {"c3": 1, "free": "u"}})"));
  const MinimalFamily m = build_family(s, Branch::R2a_2);
  EXPECT_LT(m.helicoid_check, 1e-6);
}

TEST(Report, JsonFields) {
  VerificationReport r;
  r.check = "isometry";
  r.tol = 1e-6;
  r.max_residual = 2e-7;
  r.pass = true;
  r.excluded_points = {{1, 2}};
  const json j = to_json(r);
  EXPECT_EQ(j["check"], "isometry");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["excluded_points"][0][1], 2);
}

TEST(Mesh, UnitGrid) {
  const Domain d{{{0, 1}}, {0, 1}};
  const MeshFile m = export_mesh([](double u, double v) { return Vec4{u, v, u * v, u + v}; }, d, 2, 2);
  EXPECT_EQ(m.points.size(), 4u);
  ASSERT_EQ(m.faces.size(), 1u);
  EXPECT_EQ(m.faces[0], (std::array<int, 4>{0, 2, 3, 1}));
  EXPECT_FALSE(m.hyperplanar);
  EXPECT_EQ(m.dropped, 1);
}

TEST(Mesh, ExampleOneDropsConstantCoordinate) {
  const ExampleSetup e = example_setup(1);
  const MeshFile m = export_mesh(e.pair.helicoidal, e.pair.domain, 40, 80);
  EXPECT_EQ(m.points.size(), 3200u);
  EXPECT_EQ(m.faces.size(), 39u * 79u);
  EXPECT_TRUE(m.hyperplanar);
  EXPECT_EQ(m.dropped, 2);
  EXPECT_EQ(m.u.front(), 1.32);
  EXPECT_EQ(m.u.back(), 1.72);
}

TEST(Mesh, ExampleThreeRanges) {
  const ExampleSetup e = example_setup(3);
  const MeshFile m = export_mesh(e.pair.helicoidal, e.pair.domain, 10, 10);
  EXPECT_EQ(m.u.front(), 2);
  EXPECT_EQ(m.u.back(), 8);
  EXPECT_EQ(m.v.front(), -1);
  EXPECT_EQ(m.v.back(), 1);
}

TEST(Mesh, NoFacesAcrossGap) {
  const ExampleSetup e = example_setup(4);
  const MeshFile m = export_mesh(e.pair.helicoidal, e.pair.domain, 20, 10);
  EXPECT_EQ(m.points.size(), 200u);
  EXPECT_EQ(m.faces.size(), 18u * 9u);
}

TEST(Mesh, ExplicitProjection) {
  const Domain d{{{0, 1}}, {0, 1}};
  const MeshFile m =
      export_mesh([](double u, double v) { return Vec4{u, v, 1, u + v}; }, d, 3, 3, parse_projection("x4"));
  EXPECT_EQ(m.dropped, 3);
  EXPECT_FALSE(m.hyperplanar);
  EXPECT_EQ(m.projected[4][2], 1);
  EXPECT_THROW(parse_projection("x5"), InvalidArgument);
}

TEST(Mesh, TextFormats) {
  const Domain d{{{0, 1}}, {0, 1}};
  const MeshFile m = export_mesh([](double u, double v) { return Vec4{u, v, 0.5, u * v}; }, d, 2, 2);
  const std::string csv = mesh_text(m, MeshFormat::Csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "u,v,x1,x2,x3,x4");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  const std::string obj = mesh_text(m, MeshFormat::Obj);
  EXPECT_NE(obj.find("f 1 3 4 2"), std::string::npos);
  const json j = json::parse(mesh_text(m, MeshFormat::Json));
  EXPECT_EQ(j["vertices"].size(), 4u);
  EXPECT_EQ(j["dropped"], "x3");
  EXPECT_THROW(parse_mesh_format("stl"), InvalidArgument);
}
