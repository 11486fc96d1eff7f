#include "octa/report.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

using namespace octa;
using octa::io::json;

namespace {

std::vector<Vec3> parse_off(const std::string& text) {
  std::istringstream in(text);
  return io::read_off(in);
}

std::optional<ErrorCode> off_error(const std::string& text) {
  try {
    parse_off(text);
  } catch (const GeometryError& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST(ReadOff, TetrahedronWithCommentsAndHeader) {
  const auto v = parse_off(
      "OFF\n# a tetrahedron\n4 4 6\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1  # last vertex\n"
      "3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[3], Vec3(-1, -1, 1));
}

TEST(ReadOff, HeaderIsOptional) {
  EXPECT_EQ(parse_off("3 0 0\n0 0 0\n1 0 0\n0 1 0\n").size(), 3u);
}

TEST(ReadOff, Errors) {
  EXPECT_EQ(off_error("OFF\n4 0 0\n1 1 1\n"), ErrorCode::ParseError);             // truncated
  EXPECT_EQ(off_error("OFF\n1 0 0\n1 x 1\n"), ErrorCode::ParseError);             // bad number
  EXPECT_EQ(off_error("OFF\n-1 0 0\n"), ErrorCode::ParseError);                   // bad count
  EXPECT_EQ(off_error("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 5\n"), ErrorCode::ParseError);
  EXPECT_EQ(off_error("OFF\n1 0 0\n1 nan 1\n"), ErrorCode::ParseError);
}

TEST(PolytopeJson, VerticesAndHalfspacesRoundTrip) {
  const auto c = octa::testing::cube();
  for (auto schema : {io::PolytopeSchema::Vertices, io::PolytopeSchema::Halfspaces}) {
    const json j = io::polytope_to_json(c, schema);
    const auto back = io::polytope_from_json(json::parse(j.dump()));
    ASSERT_EQ(back.vertices().size(), c.vertices().size());
    for (std::size_t i = 0; i < c.vertices().size(); ++i) EXPECT_LE((back.vertices()[i] - c.vertices()[i]).norm(), 1e-15);
  }
}

TEST(PolytopeJson, Errors) {
  EXPECT_THROW(io::polytope_from_json(json::array()), GeometryError);
  EXPECT_THROW(io::polytope_from_json(json{{"faces", 1}}), GeometryError);
  EXPECT_THROW(io::polytope_from_json(json{{"halfspaces", {{{"normal", {1, 0, 0}}}}}}), GeometryError);
  EXPECT_THROW(io::polytope_from_json(json{{"vertices", {{1, 0}}}}), GeometryError);
}

TEST(PoseJson, RoundTripIsExact) {
  SplitMix rng(5);
  for (int k = 0; k < 100; ++k) {
    OctahedronPose pose;
    pose.center = rng.unit_vector() * rng.uniform(0, 10);
    pose.rotation = Quat(octa::testing::random_rotation(rng));
    pose.scale = rng.uniform(0.1, 3);
    const auto back = io::pose_from_json(json::parse(io::pose_to_json(pose).dump()));
    EXPECT_EQ(back.center, pose.center);
    EXPECT_EQ(back.scale, pose.scale);
    EXPECT_LE(vertex_set_distance(back, pose), 1e-15 * std::max(1.0, pose.center.norm()));
  }
}

TEST(PoseJson, RotationOrderIsWxyz) {
  const json j = {{"center", {0, 0, 0}}, {"rotation", {0, 0, 0, 1}}, {"scale", 1}};
  const auto pose = io::pose_from_json(j);
  EXPECT_NEAR((pose.rotation_matrix() * Vec3(1, 0, 0) - Vec3(-1, 0, 0)).norm(), 0, 1e-15);
  const json out = io::pose_to_json(pose);
  EXPECT_EQ(out.at("rotation").at(3).get<double>(), 1.0);
}

TEST(PoseJson, Errors) {
  EXPECT_THROW(io::pose_from_json(json{{"center", {0, 0, 0}}, {"scale", 1}}), GeometryError);
  EXPECT_THROW(io::pose_from_json(json{{"center", {0, 0, 0}}, {"rotation", {0, 0, 0, 0}}, {"scale", 1}}), GeometryError);
  EXPECT_THROW(io::pose_from_json(json{{"center", {0, 0, 0}}, {"rotation", {1, 0, 0, 0}}, {"scale", -1}}), GeometryError);
  EXPECT_THROW(io::pose_from_json(json{{"center", {0, 0}}, {"rotation", {1, 0, 0, 0}}, {"scale", 1}}), GeometryError);
}

TEST(AngleJson, ParsesEdgesAndOptionalApex) {
  const auto a = io::angle_from_json(json{{"edges", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.apex(), Vec3::Zero());
  const auto b = io::angle_from_json(json{{"apex", {1, 2, 3}}, {"edges", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}});
  EXPECT_EQ(b.apex(), Vec3(1, 2, 3));
  EXPECT_THROW(io::angle_from_json(json{{"apex", {0, 0, 0}}}), GeometryError);
}

TEST(WriteObj, SixVerticesEightFaces) {
  std::ostringstream out;
  io::write_obj(out, OctahedronPose{});
  std::istringstream in(out.str());
  std::string line;
  int v = 0, f = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) {
      ++f;
      std::istringstream ls(line.substr(2));
      int a, b, c;
      ls >> a >> b >> c;
      for (int i : {a, b, c}) {
        EXPECT_GE(i, 1);
        EXPECT_LE(i, 6);
      }
    }
  }
  EXPECT_EQ(v, 6);
  EXPECT_EQ(f, 8);
}

TEST(WriteObj, FacesAreOutwardOriented) {
  const OctahedronPose pose{};
  const auto verts = pose.vertices();
  for (const auto& face : octahedron_faces()) {
    const Vec3& a = verts[static_cast<std::size_t>(face[0])];
    const Vec3& b = verts[static_cast<std::size_t>(face[1])];
    const Vec3& c = verts[static_cast<std::size_t>(face[2])];
    EXPECT_GT((b - a).cross(c - a).dot((a + b + c) / 3 - pose.center), 0);
  }
}

TEST(LoadPolytope, OffAndJsonFiles) {
  const std::string dir = ::testing::TempDir();
  {
    std::ofstream f(dir + "/t.off");
    f << "OFF\n4 0 0\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n";
  }
  {
    std::ofstream f(dir + "/t.json");
    f << io::polytope_to_json(octa::testing::regular_tetrahedron()).dump();
  }
  EXPECT_EQ(io::load_polytope(dir + "/t.off").vertices().size(), 4u);
  EXPECT_EQ(io::load_polytope(dir + "/t.json").vertices().size(), 4u);
  EXPECT_THROW(io::load_polytope(dir + "/missing.off"), GeometryError);
  {
    std::ofstream f(dir + "/bad.json");
    f << "{ not json";
  }
  try {
    io::load_polytope(dir + "/bad.json");
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Report, ClassificationRecord) {
  const SolidAngle a(Vec3::Zero(), {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
  const json j = io::general_class_to_json(classify_general(a), a);
  EXPECT_EQ(j.at("schema"), io::kSchema);
  EXPECT_EQ(j.at("tag"), "NON_SPECIAL");
  EXPECT_EQ(j.at("facet_angles").size(), 3u);
}

TEST(Report, CertifyRecordListsSixVertices) {
  const auto cert = certify(octa::testing::cube(), OctahedronPose{}, 1e-10);
  const json j = io::certify_to_json(cert);
  EXPECT_TRUE(j.at("certified").get<bool>());
  ASSERT_EQ(j.at("vertices").size(), 6u);
  EXPECT_EQ(j.at("vertices").at(0).at("feature").at("kind"), "facet");
}
