// Classify the corners of a truncated pyramid, then inscribe a regular
// octahedron in its surface and print the six vertices.

#include "octa/inscriber.hpp"

#include <cstdio>

int main() {
  using namespace octa;

  // A tall square pyramid with its top cut off: 8 vertices, all simple.
  const ConvexPolytope p = ConvexPolytope::from_points({
      Vec3(1, 1, 0), Vec3(1, -1, 0), Vec3(-1, 1, 0), Vec3(-1, -1, 0),
      Vec3(0.2, 0.2, 4), Vec3(0.2, -0.2, 4), Vec3(-0.2, 0.2, 4), Vec3(-0.2, -0.2, 4),
  });
  std::printf("%zu vertices, %zu facets, simple: %s\n", p.vertices().size(), p.halfspaces().size(),
              is_simple(p).simple ? "yes" : "no");

  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const AngleClass cls = classify_trihedral(solid_angle_at(p, v));
    std::printf("  vertex %zu: %s (margin %+.4f)\n", v, to_string(cls.tag), cls.margin);
  }

  InscribeConfig cfg;
  cfg.multistart.rotations = 12;
  const InscribeResult res = continue_to_surface(p, cfg);
  std::printf("certified: %s, max distance to surface %.2e, %zu continuation steps\n",
              res.certificate.certified ? "yes" : "no", res.certificate.max_distance, res.trace.steps.size());
  for (const auto& x : res.final_report.pose.vertices()) std::printf("  % .9f % .9f % .9f\n", x.x(), x.y(), x.z());
  return res.certificate.certified ? 0 : 1;
}
