#pragma once

// JSON records for classification, inscription and deformation paths.

#include "octa/inscriber.hpp"
#include "octa/io.hpp"

namespace octa::io {

inline constexpr const char* kSchema = "octa-inscribe/1";

inline json certificate_to_json(const PlacementCertificate& c) {
  json placed = json::array();
  for (const auto& p : c.placed) placed.push_back(to_json(p));
  return {{"labeling", c.labeling}, {"mirrored", c.mirrored}, {"placed", placed}, {"margins", c.margins},
          {"arc_slack", c.arc_slack}};
}

inline json angle_class_to_json(const AngleClass& c) {
  json out = {{"tag", to_string(c.tag)}, {"margin", c.margin}};
  if (c.certificate) out["certificate"] = certificate_to_json(*c.certificate);
  return out;
}

inline json general_class_to_json(const GeneralClass& g, const SolidAngle& angle) {
  json out = {{"schema", kSchema}, {"facet_angles", angle.facet_angles()}};
  if (g.trihedral) {
    const json t = angle_class_to_json(*g.trihedral);
    for (auto it = t.begin(); it != t.end(); ++it) out[it.key()] = it.value();
  } else {
    out["tag"] = to_string(g.tag);
    if (g.fit) {
      out["margin"] = g.fit->margin;
      out["fit"] = {{"tag", to_string(g.fit->tag)}, {"reason", g.fit->reason}};
    }
    if (!g.note.empty()) out["note"] = g.note;
  }
  return out;
}

inline json solve_report_to_json(const SolveReport& r) {
  return {{"pose", pose_to_json(r.pose)},   {"residuals", r.residuals}, {"max_residual", r.max_residual()},
          {"iterations", r.iterations},     {"converged", r.converged}, {"epsilon", r.epsilon},
          {"tolerance", r.tolerance},       {"warnings", r.warnings}};
}

inline json trace_to_json(const ContinuationTrace& t) {
  json steps = json::array();
  for (const auto& [eps, rep] : t.steps) {
    steps.push_back({{"epsilon", eps}, {"max_residual", rep.max_residual()}, {"iterations", rep.iterations},
                     {"scale", rep.pose.scale}});
  }
  return {{"steps", steps}, {"diameter_history", t.diameter_history}};
}

inline json certify_to_json(const CertifyReport& c) {
  json verts = json::array();
  for (const auto& v : c.vertices) {
    verts.push_back({{"position", to_json(v.position)},
                     {"distance", v.distance},
                     {"feature", {{"kind", to_string(v.feature.kind)}, {"index", v.feature.index}}}});
  }
  return {{"certified", c.certified}, {"max_distance", c.max_distance}, {"regularity_error", c.regularity_error},
          {"vertices", verts}};
}

inline json triangle_to_json(const SphTriangle& t) {
  json verts = json::array();
  for (int i = 0; i < 3; ++i) verts.push_back(to_json(t.vertex(i).v()));
  return {{"sides", {t.side(0), t.side(1), t.side(2)}}, {"vertices", verts}};
}

}  // namespace octa::io
