#pragma once

// Shared fixtures and random generators for the test programs.

#include "octa/angles.hpp"
#include "octa/polytope.hpp"

#include <optional>
#include <vector>

namespace octa::testing {

inline ConvexPolytope cube(double half = 1.0) {
  std::vector<Halfspace> hs;
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {1.0, -1.0}) {
      Vec3 n = Vec3::Zero();
      n(axis) = s;
      hs.push_back({n, half});
    }
  return ConvexPolytope::from_halfspaces(hs);
}

inline ConvexPolytope regular_tetrahedron() {
  return ConvexPolytope::from_points({Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)});
}

inline ConvexPolytope square_pyramid(double height = 1.0) {
  return ConvexPolytope::from_points(
      {Vec3(1, 1, 0), Vec3(1, -1, 0), Vec3(-1, 1, 0), Vec3(-1, -1, 0), Vec3(0, 0, height)});
}

inline ConvexPolytope regular_octahedron() {
  return ConvexPolytope::from_points(
      {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)});
}

inline Vec3 random_unit(SplitMix& rng) { return rng.unit_vector(); }

inline Mat3 random_rotation(SplitMix& rng) { return rng.rotation().toRotationMatrix(); }

/// Random triangle with sides drawn uniformly from [lo, hi], randomly rotated.
inline SphTriangle random_triangle(SplitMix& rng, double lo, double hi) {
  for (;;) {
    const double a = rng.uniform(lo, hi), b = rng.uniform(lo, hi), c = rng.uniform(lo, hi);
    try {
      return transformed(triangle_from_sides(c, b, a), random_rotation(rng));
    } catch (const GeometryError&) {
    }
  }
}

/// Random triangle whose vertices are three random points in a cap.
inline std::optional<SphTriangle> random_cap_triangle(SplitMix& rng, double cap) {
  const Vec3 axis = rng.unit_vector();
  std::array<SpherePoint, 3> pts;
  for (auto& p : pts) {
    Vec3 v;
    do {
      v = rng.unit_vector();
    } while (arc_distance(v, axis) > cap);
    p = SpherePoint(v);
  }
  try {
    return SphTriangle(pts[0], pts[1], pts[2]);
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

/// Polytope cut out by `m` random planes tangent to the unit ball; nullopt if
/// unbounded or too elongated.
inline std::optional<ConvexPolytope> random_tangent_polytope(SplitMix& rng, int m, double max_diameter = 20) {
  std::vector<Halfspace> hs;
  for (int i = 0; i < m; ++i) hs.push_back({rng.unit_vector(), 1.0});
  try {
    auto p = ConvexPolytope::from_halfspaces(hs);
    if (p.diameter() > max_diameter) return std::nullopt;
    return p;
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

}  // namespace octa::testing
