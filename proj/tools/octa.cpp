// octa: classify solid angles, inscribe regular octahedra, build deformation paths.

#include "octa/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using octa::io::json;

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitInscriptionFailed = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct Common {
  std::string out;
  bool quiet = false;
};

void emit(const json& j, const Common& common) {
  if (common.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(common.out);
  if (!f) throw octa::GeometryError(octa::ErrorCode::ParseError, "cannot write " + common.out);
  f << j.dump(2) << '\n';
}

void note(const Common& common, const std::string& msg) {
  if (!common.quiet) std::cerr << msg << '\n';
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string input;
  std::optional<std::size_t> vertex;
  double tol = octa::kAngleTol;
};

int cmd_classify(const ClassifyArgs& a, const Common& common) {
  std::optional<octa::SolidAngle> angle;
  if (a.vertex) {
    const auto p = octa::io::load_polytope(a.input);
    if (*a.vertex >= p.vertices().size()) {
      throw octa::GeometryError(octa::ErrorCode::ParseError, "vertex index out of range");
    }
    angle = octa::solid_angle_at(p, *a.vertex);
  } else {
    const json j = octa::io::read_json_file(a.input);
    if (j.contains("edges")) {
      angle = octa::io::angle_from_json(j);
    } else {
      throw octa::GeometryError(octa::ErrorCode::ParseError, "angle spec needs \"edges\" (or pass --vertex with a polytope)");
    }
  }
  const auto cls = octa::classify_general(*angle, a.tol);
  emit(octa::io::general_class_to_json(cls, *angle), common);
  if (cls.trihedral) {
    switch (cls.trihedral->tag) {
      case octa::AngleTag::Special: return kExitOk;
      case octa::AngleTag::NonSpecial: return kExitNo;
      case octa::AngleTag::Indeterminate: return kExitIndeterminate;
    }
  }
  switch (cls.tag) {
    case octa::GeneralTag::NotInA0: return kExitOk;
    case octa::GeneralTag::InA0: return kExitNo;
    default: return kExitIndeterminate;
  }
}

// ---------------------------------------------------------------------------

struct InscribeArgs {
  std::string input;
  double tol = 1e-8;
  double eps0 = 0;
  std::size_t seeds = 60;
  std::uint64_t seed = 0;
  std::string json_out;
  std::string obj_out;
};

int cmd_inscribe(const InscribeArgs& a, const Common& common) {
  const auto p = octa::io::load_polytope(a.input);
  octa::InscribeConfig cfg;
  cfg.eps0 = a.eps0;
  cfg.multistart.rotations = a.seeds;
  cfg.multistart.seed = a.seed;
  cfg.certify_rel = a.tol;

  json report = {{"schema", octa::io::kSchema}, {"input", a.input}, {"diameter", p.diameter()},
                 {"simple", octa::is_simple(p).simple}};
  octa::InscribeResult result;
  try {
    result = octa::continue_to_surface(p, cfg);
  } catch (const octa::GeometryError& e) {
    if (e.code() != octa::ErrorCode::InscriptionFailed) throw;
    report["certified"] = false;
    report["error"] = e.what();
    report["warnings"] = octa::inscription_warnings(p);
    emit(report, common);
    note(common, e.what());
    return kExitInscriptionFailed;
  }
  for (const auto& w : result.warnings) note(common, "warning: " + w);
  json events = json::array();
  for (const auto& [ev, v] : result.events) events.push_back({{"event", to_string(ev)}, {"vertex", v}});

  const auto cert = octa::certify(p, result.final_report.pose, a.tol * p.diameter());
  report["warnings"] = result.warnings;
  report["events"] = events;
  report["tracks_tried"] = result.tracks_tried;
  report["pose"] = octa::io::pose_to_json(result.final_report.pose);
  report["final"] = octa::io::solve_report_to_json(result.final_report);
  report["trace"] = octa::io::trace_to_json(result.trace);
  report["certificate"] = octa::io::certify_to_json(cert);
  report["tolerance"] = a.tol * p.diameter();
  report["certified"] = cert.certified;
  emit(report, common);

  if (!a.json_out.empty()) {
    std::ofstream f(a.json_out);
    if (!f) throw octa::GeometryError(octa::ErrorCode::ParseError, "cannot write " + a.json_out);
    f << octa::io::pose_to_json(result.final_report.pose).dump(2) << '\n';
  }
  if (!a.obj_out.empty()) {
    std::ofstream f(a.obj_out);
    if (!f) throw octa::GeometryError(octa::ErrorCode::ParseError, "cannot write " + a.obj_out);
    octa::io::write_obj(f, result.final_report.pose);
  }
  if (!cert.certified) {
    note(common, "octahedron found but not certified at the requested tolerance");
    return kExitInscriptionFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PathArgs {
  std::vector<double> sides;
  std::size_t steps = 60;
  double tol = octa::kAngleTol;
};

int cmd_path(const PathArgs& a, const Common& common) {
  const octa::SphTriangle tri = octa::triangle_from_sides(a.sides[0], a.sides[1], a.sides[2]);
  const auto start = octa::placement_test(tri, a.tol);
  if (start.tag != octa::AngleTag::NonSpecial) {
    note(common, std::string("triangle classifies ") + to_string(start.tag) + "; no path out of the special set");
    emit({{"schema", octa::io::kSchema}, {"start", octa::io::angle_class_to_json(start)}, {"steps", json::array()}},
         common);
    return start.tag == octa::AngleTag::Special ? kExitNo : kExitIndeterminate;
  }
  const auto path = octa::deformation_path(tri, a.steps, a.tol);
  json steps = json::array();
  for (const auto& t : path) {
    json s = octa::io::triangle_to_json(t);
    const auto cls = octa::placement_test(t, a.tol);
    s["tag"] = to_string(cls.tag);
    s["margin"] = cls.margin;
    steps.push_back(s);
  }
  emit({{"schema", octa::io::kSchema}, {"steps", steps}}, common);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CertifyArgs {
  std::string polytope;
  std::string pose;
  double tol = 1e-8;
};

int cmd_certify(const CertifyArgs& a, const Common& common) {
  const auto p = octa::io::load_polytope(a.polytope);
  json pj = octa::io::read_json_file(a.pose);
  // Accept a bare pose record or a full inscribe report.
  if (pj.contains("pose")) pj = pj.at("pose");
  const auto pose = octa::io::pose_from_json(pj);
  const auto cert = octa::certify(p, pose, a.tol * p.diameter());
  json out = octa::io::certify_to_json(cert);
  out["schema"] = octa::io::kSchema;
  out["tolerance"] = a.tol * p.diameter();
  emit(out, common);
  return cert.certified ? kExitOk : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular octahedra inscribed in convex polytopes"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--out", common.out, "Write the JSON report to this file instead of stdout");
  app.add_flag("--quiet", common.quiet, "Suppress messages on stderr");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Classify a solid angle (exit 0 special, 1 not, 2 undecided)");
  classify->add_option("input", ca.input, "Angle spec JSON, or a polytope file with --vertex")->required();
  classify->add_option("--vertex", ca.vertex, "Vertex index when the input is a polytope");
  classify->add_option("--tol", ca.tol, "Angular tolerance band (radians)");

  InscribeArgs ia;
  auto* inscribe = app.add_subcommand("inscribe", "Find a regular octahedron inscribed in a polytope surface");
  inscribe->add_option("input", ia.input, "Polytope file (.off or .json)")->required();
  inscribe->add_option("--tol", ia.tol, "Certification tolerance relative to the diameter");
  inscribe->add_option("--eps0", ia.eps0, "Initial smoothing radius (default 0.2 * inradius)");
  inscribe->add_option("--seeds", ia.seeds, "Number of multistart rotations");
  inscribe->add_option("--seed", ia.seed, "Offset into the rotation sequence");
  inscribe->add_option("--json", ia.json_out, "Write the pose record here");
  inscribe->add_option("--obj", ia.obj_out, "Write the octahedron as OBJ here");

  PathArgs pa;
  auto* path = app.add_subcommand("path", "Deformation path of non-special triangles");
  path->add_option("--sides", pa.sides, "Three side lengths (radians)")->required()->expected(3);
  path->add_option("--steps", pa.steps, "Minimum number of path steps");
  path->add_option("--tol", pa.tol, "Angular tolerance band (radians)");
  std::uint64_t path_seed = 0;
  path->add_option("--seed", path_seed, "Accepted for uniformity; the path is deterministic");

  CertifyArgs cfa;
  auto* certify = app.add_subcommand("certify", "Check a pose against a polytope surface");
  certify->add_option("polytope", cfa.polytope, "Polytope file (.off or .json)")->required();
  certify->add_option("pose", cfa.pose, "Pose JSON or inscribe report")->required();
  certify->add_option("--tol", cfa.tol, "Tolerance relative to the diameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(ca, common);
    if (inscribe->parsed()) return cmd_inscribe(ia, common);
    if (path->parsed()) return cmd_path(pa, common);
    if (certify->parsed()) return cmd_certify(cfa, common);
  } catch (const octa::GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case octa::ErrorCode::ParseError:
      case octa::ErrorCode::InvalidSolidAngle:
      case octa::ErrorCode::DegenerateTriangle:
      case octa::ErrorCode::Degenerate:
      case octa::ErrorCode::Inconsistent:
      case octa::ErrorCode::InvalidPolygon:
      case octa::ErrorCode::OutOfRange: return kExitUsage;
      default: return kExitInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
