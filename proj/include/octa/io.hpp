#pragma once

// File formats: OFF and JSON polytopes, JSON poses and angle specs, OBJ export.

#include "octa/angles.hpp"
#include "octa/octahedron.hpp"
#include "octa/polytope.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace octa::io {

using json = nlohmann::json;

inline json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

inline Vec3 vec3_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw GeometryError(ErrorCode::ParseError, std::string(what) + " must be a 3-array");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) {
      throw GeometryError(ErrorCode::ParseError, std::string(what) + " has a non-numeric entry");
    }
    out(i) = j[static_cast<std::size_t>(i)].get<double>();
  }
  return out;
}

/// Vertex list of an ASCII OFF file. Face records are read and index-checked
/// but the hull is rebuilt from the vertices.
inline std::vector<Vec3> read_off(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next_number = [&](const char* what) {
    if (pos >= tokens.size()) throw GeometryError(ErrorCode::ParseError, std::string("OFF: missing ") + what);
    try {
      std::size_t used = 0;
      const double v = std::stod(tokens[pos], &used);
      if (used != tokens[pos].size()) throw std::invalid_argument(tokens[pos]);
      ++pos;
      return v;
    } catch (const std::exception&) {
      throw GeometryError(ErrorCode::ParseError, std::string("OFF: bad ") + what + " '" + tokens[pos] + "'");
    }
  };
  if (pos < tokens.size() && tokens[pos] == "OFF") ++pos;
  const double nv = next_number("vertex count");
  const double nf = next_number("face count");
  next_number("edge count");
  if (nv < 0 || nf < 0 || nv != std::floor(nv) || nf != std::floor(nf)) {
    throw GeometryError(ErrorCode::ParseError, "OFF: counts must be non-negative integers");
  }
  std::vector<Vec3> verts;
  for (std::size_t i = 0; i < static_cast<std::size_t>(nv); ++i) {
    Vec3 v;
    for (int k = 0; k < 3; ++k) v(k) = next_number("vertex coordinate");
    if (!v.allFinite()) throw GeometryError(ErrorCode::ParseError, "OFF: non-finite vertex");
    verts.push_back(v);
  }
  for (std::size_t f = 0; f < static_cast<std::size_t>(nf); ++f) {
    const double k = next_number("face size");
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
      const double idx = next_number("face index");
      if (idx < 0 || idx >= nv) throw GeometryError(ErrorCode::ParseError, "OFF: face index out of range");
    }
  }
  return verts;
}

inline ConvexPolytope polytope_from_json(const json& j) {
  if (!j.is_object()) throw GeometryError(ErrorCode::ParseError, "polytope JSON must be an object");
  if (j.contains("halfspaces")) {
    std::vector<Halfspace> hs;
    for (const auto& h : j.at("halfspaces")) {
      if (!h.is_object() || !h.contains("normal") || !h.contains("offset") || !h.at("offset").is_number()) {
        throw GeometryError(ErrorCode::ParseError, "halfspace needs \"normal\" and numeric \"offset\"");
      }
      hs.push_back({vec3_from_json(h.at("normal"), "normal"), h.at("offset").get<double>()});
    }
    return ConvexPolytope::from_halfspaces(hs);
  }
  if (j.contains("vertices")) {
    std::vector<Vec3> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(vec3_from_json(v, "vertex"));
    return ConvexPolytope::from_points(pts);
  }
  throw GeometryError(ErrorCode::ParseError, "polytope JSON needs \"vertices\" or \"halfspaces\"");
}

enum class PolytopeSchema { Vertices, Halfspaces };

inline json polytope_to_json(const ConvexPolytope& p, PolytopeSchema schema = PolytopeSchema::Halfspaces) {
  json out = json::object();
  if (schema == PolytopeSchema::Vertices) {
    out["vertices"] = json::array();
    for (const auto& v : p.vertices()) out["vertices"].push_back(to_json(v));
  } else {
    out["halfspaces"] = json::array();
    for (const auto& h : p.halfspaces()) out["halfspaces"].push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw GeometryError(ErrorCode::ParseError, path + ": " + e.what());
  }
}

/// Reads a polytope from an OFF or JSON file, chosen by extension.
inline ConvexPolytope load_polytope(const std::string& path) {
  const bool is_off = path.size() >= 4 && (path.substr(path.size() - 4) == ".off" || path.substr(path.size() - 4) == ".OFF");
  if (is_off) {
    std::ifstream in(path);
    if (!in) throw GeometryError(ErrorCode::ParseError, "cannot open " + path);
    return ConvexPolytope::from_points(read_off(in));
  }
  return polytope_from_json(read_json_file(path));
}

// Poses: rotation is stored as [w, x, y, z].

inline json pose_to_json(const OctahedronPose& pose) {
  const Quat q = pose.rotation.normalized();
  return {{"center", to_json(pose.center)}, {"rotation", {q.w(), q.x(), q.y(), q.z()}}, {"scale", pose.scale}};
}

inline OctahedronPose pose_from_json(const json& j) {
  if (!j.is_object() || !j.contains("center") || !j.contains("rotation") || !j.contains("scale")) {
    throw GeometryError(ErrorCode::ParseError, "pose needs \"center\", \"rotation\" and \"scale\"");
  }
  const auto& r = j.at("rotation");
  if (!r.is_array() || r.size() != 4) throw GeometryError(ErrorCode::ParseError, "rotation must be [w, x, y, z]");
  for (const auto& c : r)
    if (!c.is_number()) throw GeometryError(ErrorCode::ParseError, "rotation has a non-numeric entry");
  if (!j.at("scale").is_number()) throw GeometryError(ErrorCode::ParseError, "scale must be a number");
  OctahedronPose pose;
  pose.center = vec3_from_json(j.at("center"), "center");
  pose.rotation = Quat(r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>());
  if (!(pose.rotation.norm() > 0)) throw GeometryError(ErrorCode::ParseError, "zero rotation quaternion");
  pose.rotation.normalize();
  pose.scale = j.at("scale").get<double>();
  if (!(pose.scale > 0)) throw GeometryError(ErrorCode::ParseError, "scale must be positive");
  return pose;
}

/// {"apex": [...], "edges": [[...], ...]}
inline SolidAngle angle_from_json(const json& j) {
  if (!j.is_object() || !j.contains("edges")) throw GeometryError(ErrorCode::ParseError, "angle spec needs \"edges\"");
  const Vec3 apex = j.contains("apex") ? vec3_from_json(j.at("apex"), "apex") : Vec3::Zero();
  std::vector<Vec3> edges;
  if (!j.at("edges").is_array()) throw GeometryError(ErrorCode::ParseError, "\"edges\" must be an array");
  for (const auto& e : j.at("edges")) edges.push_back(vec3_from_json(e, "edge"));
  return SolidAngle(apex, edges);
}

inline void write_obj(std::ostream& out, const OctahedronPose& pose) {
  out.precision(17);
  out << "# regular octahedron: center " << pose.center.x() << ' ' << pose.center.y() << ' ' << pose.center.z()
      << " scale " << pose.scale << '\n';
  for (const auto& v : pose.vertices()) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& f : octahedron_faces()) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

}  // namespace octa::io
