#pragma once

// Classification of solid angles by whether their boundary admits an
// inscribed regular octahedron.
//
// A trihedral angle is special exactly when its spherical triangle v1v2v3 can
// be placed in the regular triangle t1t2t3 of side pi/3 with v1 = t1, v2 on the
// arc t1t2 and v3 inside the triangle t1v2t3. Non-trihedral angles only get
// the necessary condition: a special angle's polygon fits inside T0.

#include "octa/octahedron.hpp"
#include "octa/sphere.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace octa {

/// Convex polyhedral cone: apex plus extreme-ray directions, positively oriented.
class SolidAngle {
 public:
  SolidAngle(const Vec3& apex, const std::vector<Vec3>& edges) : apex_(apex) {
    if (edges.size() < 3) throw GeometryError(ErrorCode::InvalidSolidAngle, "fewer than 3 edges");
    std::vector<SpherePoint> pts;
    pts.reserve(edges.size());
    for (const auto& e : edges) pts.emplace_back(e);
    try {
      SphPolygon poly(pts);
      edges_.clear();
      for (const auto& p : poly.vertices()) edges_.push_back(p.v());
    } catch (const GeometryError& err) {
      throw GeometryError(ErrorCode::InvalidSolidAngle, err.what());
    }
    const std::size_t n = edges_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& prev = edges_[(i + n - 1) % n];
      const Vec3& next = edges_[(i + 1) % n];
      if (signed_side_distance(prev, next, edges_[i]) > -kAngleTol) {
        throw GeometryError(ErrorCode::InvalidSolidAngle, "edge " + std::to_string(i) + " is not an extreme ray");
      }
    }
  }

  const Vec3& apex() const { return apex_; }
  const std::vector<Vec3>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }

  SphPolygon polygon() const {
    std::vector<SpherePoint> pts;
    for (const auto& e : edges_) pts.emplace_back(e);
    return SphPolygon(pts);
  }

  /// Planar angle of facet i, spanned by edges i and i+1.
  double facet_angle(std::size_t i) const {
    return arc_distance(edges_[i], edges_[(i + 1) % edges_.size()]);
  }
  std::vector<double> facet_angles() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < edges_.size(); ++i) out.push_back(facet_angle(i));
    return out;
  }

  /// Inward unit normal of facet i: the cone is { x : n_i . (x - apex) >= 0 }.
  Vec3 facet_normal(std::size_t i) const {
    return edges_[i].cross(edges_[(i + 1) % edges_.size()]).normalized();
  }

 private:
  Vec3 apex_;
  std::vector<Vec3> edges_;
};

/// Solid angle whose spherical triangle is `tri`.
inline SolidAngle solid_angle_from_triangle(const SphTriangle& tri, const Vec3& apex = Vec3::Zero()) {
  return SolidAngle(apex, {tri.vertex(0).v(), tri.vertex(1).v(), tri.vertex(2).v()});
}

// ---------------------------------------------------------------------------
// The regular triangle T0

/// Vertices of T0 in canonical placement: t1 = e3, t2 and t3 at polar angle
/// pi/3, mirror images across the xz-plane, positively oriented.
inline const std::array<Vec3, 3>& t0_vertices() {
  static const std::array<Vec3, 3> t = [] {
    const double half = 0.5 * std::acos(1.0 / 3.0);
    const double s = std::sin(kPi / 3), c = std::cos(kPi / 3);
    return std::array<Vec3, 3>{Vec3::UnitZ(), Vec3(s * std::cos(half), -s * std::sin(half), c),
                               Vec3(s * std::cos(half), s * std::sin(half), c)};
  }();
  return t;
}

inline SphTriangle t0_triangle() {
  const auto& t = t0_vertices();
  return SphTriangle(SpherePoint(t[0]), SpherePoint(t[1]), SpherePoint(t[2]));
}

inline double t0_area() { return 3.0 * std::acos(1.0 / 3.0) - kPi; }

// ---------------------------------------------------------------------------
// Classification results

struct PlacementCertificate {
  /// labeling[k] is the index in the tested triangle of the vertex placed as v_{k+1}.
  std::array<int, 3> labeling{0, 1, 2};
  /// True when the placement reverses orientation (uses a reflection).
  bool mirrored = false;
  /// Placed v1, v2, v3 in the canonical T0 frame.
  std::array<Vec3, 3> placed{};
  /// Signed distances of v3 from the sides t1->v2, v2->t3, t3->t1.
  std::array<double, 3> margins{};
  /// pi/3 - |v1v2|; negative when v2 overshoots t2.
  double arc_slack = 0;

  double margin() const {
    return std::min({arc_slack, margins[0], margins[1], margins[2]});
  }
};

enum class AngleTag { Special, NonSpecial, Indeterminate };

inline const char* to_string(AngleTag t) {
  switch (t) {
    case AngleTag::Special: return "SPECIAL";
    case AngleTag::NonSpecial: return "NON_SPECIAL";
    case AngleTag::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

struct AngleClass {
  AngleTag tag = AngleTag::Indeterminate;
  double margin = 0;
  std::optional<PlacementCertificate> certificate;
};

// ---------------------------------------------------------------------------
// Operations

inline SphTriangle spherical_triangle_of(const SolidAngle& angle) {
  if (angle.size() != 3) throw GeometryError(ErrorCode::NotTrihedral, "solid angle has " + std::to_string(angle.size()) + " edges");
  const auto& e = angle.edges();
  return SphTriangle(SpherePoint(e[0]), SpherePoint(e[1]), SpherePoint(e[2]));
}

/// Side-angle-side construction: |v0v1| = c, |v0v2| = b, interior angle at v0.
inline SphTriangle triangle_from_sas(double c, double b, double angle_at_v0) {
  const Vec3 v0 = Vec3::UnitZ();
  const Vec3 v1(std::sin(c), 0, std::cos(c));
  const Vec3 v2(std::sin(b) * std::cos(angle_at_v0), std::sin(b) * std::sin(angle_at_v0), std::cos(b));
  return SphTriangle(SpherePoint(v0), SpherePoint(v1), SpherePoint(v2));
}

/// Relabels (reflecting if needed) so that |v0v1| >= |v0v2| >= |v1v2|.
inline SphTriangle normalize_ordering(const SphTriangle& tri) {
  std::array<int, 3> order{0, 1, 2};
  // Vertex 0 of the result is opposite the shortest side, vertex 2 opposite the longest.
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return tri.side(i) < tri.side(j); });
  const Vec3 v0 = tri.vertex(order[0]).v();
  const Vec3 v1 = tri.vertex(order[1]).v();
  Vec3 v2 = tri.vertex(order[2]).v();
  if (v0.dot(v1.cross(v2)) < 0) {
    const Vec3 n = v0.cross(v1).normalized();
    v2 = v2 - 2.0 * n.dot(v2) * n;
  }
  return SphTriangle(SpherePoint(v0), SpherePoint(v1), SpherePoint(v2));
}

namespace detail {

// Place (u[l0], u[l1], u[l2]) with v1 = t1 and v2 on the great circle t1t2;
// v3 on the t3 side when mirror_side > 0.
inline PlacementCertificate place_labeling(const SphTriangle& tri, std::array<int, 3> labeling,
                                           int mirror_side) {
  const auto& t = t0_vertices();
  const Vec3& u1 = tri.vertex(labeling[0]).v();
  const Vec3& u2 = tri.vertex(labeling[1]).v();
  const Vec3& u3 = tri.vertex(labeling[2]).v();
  const double c = arc_distance(u1, u2);
  const double b = arc_distance(u1, u3);
  const double alpha = corner_angle(u1, u2, u3);

  const Vec3 tangent = (t[1] - t[0].dot(t[1]) * t[0]).normalized();
  const Vec3 side = t[0].cross(tangent);
  const Vec3 v1 = t[0];
  const Vec3 v2 = std::cos(c) * t[0] + std::sin(c) * tangent;
  const Vec3 v3 = std::cos(b) * t[0] +
                  std::sin(b) * (std::cos(alpha) * tangent + mirror_side * std::sin(alpha) * side);

  PlacementCertificate cert;
  cert.labeling = labeling;
  cert.placed = {v1, v2, v3};
  cert.arc_slack = kPi / 3 - c;
  cert.margins = {signed_side_distance(v1, v2, v3), signed_side_distance(v2, t[2], v3),
                  signed_side_distance(t[2], v1, v3)};
  const double det_in = u1.dot(u2.cross(u3));
  const double det_out = v1.dot(v2.cross(v3));
  cert.mirrored = (det_in > 0) != (det_out > 0);
  return cert;
}

inline AngleClass class_from_margin(double margin, std::optional<PlacementCertificate> cert, double tol) {
  AngleClass out;
  out.margin = margin;
  if (margin > tol) {
    out.tag = AngleTag::Special;
  } else if (margin < -tol) {
    out.tag = AngleTag::NonSpecial;
  } else {
    out.tag = AngleTag::Indeterminate;
  }
  if (out.tag != AngleTag::NonSpecial) out.certificate = std::move(cert);
  return out;
}

}  // namespace detail

/// Tries all 6 labelings and both mirror positions of v3.
inline AngleClass placement_test(const SphTriangle& tri, double tol = kAngleTol) {
  static constexpr std::array<std::array<int, 3>, 6> kLabelings{
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  std::optional<PlacementCertificate> best;
  double best_margin = -std::numeric_limits<double>::infinity();
  for (const auto& labeling : kLabelings) {
    for (int side : {1, -1}) {
      PlacementCertificate cert = detail::place_labeling(tri, labeling, side);
      const double m = cert.margin();
      if (m > best_margin) {
        best_margin = m;
        best = cert;
      }
    }
  }
  return detail::class_from_margin(best_margin, best, tol);
}

/// Fast threshold paths first, then the full placement test.
inline AngleClass classify_trihedral(const SolidAngle& angle, double tol = kAngleTol) {
  const SphTriangle tri = spherical_triangle_of(angle);
  const double longest = std::max({tri.side(0), tri.side(1), tri.side(2)});
  if (longest > kPi / 3 + tol) {
    return detail::class_from_margin(kPi / 3 - longest, std::nullopt, tol);
  }
  const SphTriangle normalized = normalize_ordering(tri);
  if (longest < kPi / 6 - tol) {
    // Every side below pi/6 makes the ordered placement proper.
    PlacementCertificate cert = detail::place_labeling(normalized, {0, 1, 2}, 1);
    if (cert.margin() > tol) return detail::class_from_margin(cert.margin(), cert, tol);
  }
  return placement_test(normalized, tol);
}

/// Witness octahedron inscribed in a special trihedral angle, from a
/// placement certificate of (a triangle congruent to) its spherical triangle.
///
/// The placement fixes the octahedron's orientation: t1, t2, t3 are the
/// directions of the edges ba, c'b', a'c. With the orientation fixed, each
/// facet plane must support the octahedron, which determines the center.
inline OctahedronPose construct_inscribed_octahedron(const SolidAngle& angle,
                                                     const PlacementCertificate& cert,
                                                     double scale = 1.0) {
  if (angle.size() != 3) throw GeometryError(ErrorCode::NotTrihedral, "construction needs a trihedral angle");
  if (!(cert.margin() > 0)) {
    throw GeometryError(ErrorCode::ConstructionFailed, "certificate has no positive margin");
  }
  const auto& e = angle.edges();
  Mat3 placed;
  for (int k = 0; k < 3; ++k) placed.col(k) = cert.placed[static_cast<std::size_t>(k)];

  // Orthogonal map from the angle's edges onto the placed vertices.
  std::array<int, 3> perm{0, 1, 2};
  std::optional<Mat3> to_t0;
  double best_err = std::numeric_limits<double>::infinity();
  do {
    Mat3 edges;
    for (int k = 0; k < 3; ++k) edges.col(k) = e[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    const Mat3 q = placed * edges.inverse();
    const double err = (q.transpose() * q - Mat3::Identity()).norm();
    if (err < best_err) {
      best_err = err;
      to_t0 = q;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!to_t0 || best_err > 1e-6) {
    throw GeometryError(ErrorCode::ConstructionFailed, "certificate does not match the angle's triangle");
  }

  // Octahedron frame -> T0 frame: (b->a, c'->b', a'->c) map to (t1, t2, t3).
  const auto& t = t0_vertices();
  Mat3 dirs;
  dirs.col(0) = Vec3(1, -1, 0) / std::sqrt(2.0);
  dirs.col(1) = Vec3(0, -1, 1) / std::sqrt(2.0);
  dirs.col(2) = Vec3(1, 0, 1) / std::sqrt(2.0);
  Mat3 tmat;
  for (int k = 0; k < 3; ++k) tmat.col(k) = t[static_cast<std::size_t>(k)];
  const Mat3 oct_to_t0 = tmat * dirs.inverse();
  const Mat3 frame = to_t0->transpose() * oct_to_t0;

  OctahedronPose pose;
  pose.rotation = proper_quaternion(frame);
  pose.scale = scale;
  const Mat3 r = pose.rotation_matrix();
  std::array<Vec3, 6> offsets;
  for (int i = 0; i < 3; ++i) {
    offsets[static_cast<std::size_t>(i)] = scale * r.col(i);
    offsets[static_cast<std::size_t>(i + 3)] = -scale * r.col(i);
  }

  Mat3 normals;
  Vec3 rhs;
  for (int f = 0; f < 3; ++f) {
    const Vec3 n = angle.facet_normal(static_cast<std::size_t>(f));
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& w : offsets) lowest = std::min(lowest, n.dot(w));
    normals.row(f) = n.transpose();
    rhs(f) = -lowest;
  }
  const Vec3 local = normals.fullPivLu().solve(rhs);
  pose.center = angle.apex() + local;

  // Every vertex must sit on some facet plane while staying inside the cone.
  for (const auto& w : offsets) {
    const Vec3 x = local + w;
    double closest = std::numeric_limits<double>::infinity();
    for (int f = 0; f < 3; ++f) {
      const double h = angle.facet_normal(static_cast<std::size_t>(f)).dot(x);
      if (h < -1e-9 * scale) {
        throw GeometryError(ErrorCode::ConstructionFailed, "constructed vertex leaves the cone");
      }
      closest = std::min(closest, h);
    }
    if (closest > 1e-9 * scale) {
      throw GeometryError(ErrorCode::ConstructionFailed, "constructed vertex is interior to the cone");
    }
  }
  return pose;
}

// ---------------------------------------------------------------------------
// Containment in T0 for general polygons

enum class FitTag { Fits, NoFit, Indeterminate };

inline const char* to_string(FitTag t) {
  switch (t) {
    case FitTag::Fits: return "FITS";
    case FitTag::NoFit: return "NO_FIT";
    case FitTag::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

struct T0Fit {
  FitTag tag = FitTag::Indeterminate;
  /// Best min-over-vertices signed distance inside T0 found by the search.
  /// For quick rejections this is the (negative) excess that triggered it.
  double margin = 0;
  /// Rotation achieving `margin` (identity for quick rejections).
  Quat rotation = Quat::Identity();
  std::string reason;
};

struct FitSearchConfig {
  std::size_t grid_samples = 10000;
  std::size_t refine_top = 64;
  std::size_t refine_iterations = 400;
};

namespace detail {

inline double fit_margin(const std::vector<Vec3>& pts, const Mat3& r) {
  static const SphTriangle t0 = t0_triangle();
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) m = std::min(m, containment_margin(t0, r * p));
  return m;
}

// Rotation taking p -> t with the tangent of p->q along the tangent of t->s.
inline Mat3 anchored_rotation(const Vec3& p, const Vec3& q, const Vec3& t, const Vec3& s) {
  auto frame = [](const Vec3& a, const Vec3& b) {
    const Vec3 tan = (b - a.dot(b) * a).normalized();
    Mat3 f;
    f.col(0) = a;
    f.col(1) = tan;
    f.col(2) = a.cross(tan);
    return f;
  };
  return frame(t, s) * frame(p, q).transpose();
}

// Nelder-Mead maximization of fit_margin over left perturbations exp(w) * r0.
inline std::pair<double, Mat3> refine_fit(const std::vector<Vec3>& pts, const Mat3& r0,
                                          std::size_t iterations) {
  auto value = [&](const Vec3& w) { return fit_margin(pts, exp_so3(w) * r0); };
  std::array<Vec3, 4> simplex{Vec3::Zero(), Vec3(0.02, 0, 0), Vec3(0, 0.02, 0), Vec3(0, 0, 0.02)};
  std::array<double, 4> f{};
  for (std::size_t i = 0; i < 4; ++i) f[i] = value(simplex[i]);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::array<std::size_t, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });
    const std::size_t best = idx[0], worst = idx[3], second = idx[2];
    double size = 0;
    for (std::size_t i = 1; i < 4; ++i) size = std::max(size, (simplex[idx[i]] - simplex[best]).norm());
    if (size < 1e-13) break;
    const Vec3 centroid = (simplex[idx[0]] + simplex[idx[1]] + simplex[idx[2]]) / 3.0;
    const Vec3 reflected = centroid + (centroid - simplex[worst]);
    const double fr = value(reflected);
    if (fr > f[best]) {
      const Vec3 expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = value(expanded);
      if (fe > fr) {
        simplex[worst] = expanded;
        f[worst] = fe;
      } else {
        simplex[worst] = reflected;
        f[worst] = fr;
      }
    } else if (fr > f[second]) {
      simplex[worst] = reflected;
      f[worst] = fr;
    } else {
      const Vec3 contracted = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = value(contracted);
      if (fc > f[worst]) {
        simplex[worst] = contracted;
        f[worst] = fc;
      } else {
        for (std::size_t i = 1; i < 4; ++i) {
          simplex[idx[i]] = simplex[best] + 0.5 * (simplex[idx[i]] - simplex[best]);
          f[idx[i]] = value(simplex[idx[i]]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (f[i] > f[best]) best = i;
  return {f[best], exp_so3(simplex[best]) * r0};
}

}  // namespace detail

/// Decides whether some rotation takes every vertex of `poly` into T0.
/// Complete only up to the resolution of the rotation search.
inline T0Fit fits_in_T0(const SphPolygon& poly, double tol = kAngleTol, const FitSearchConfig& cfg = {}) {
  T0Fit out;
  const double excess_area = poly.area() - t0_area();
  if (excess_area > tol) {
    out.tag = FitTag::NoFit;
    out.margin = -excess_area;
    out.reason = "area exceeds area(T0)";
    return out;
  }
  const double excess_diam = poly.diameter() - kPi / 3;
  if (excess_diam > tol) {
    out.tag = FitTag::NoFit;
    out.margin = -excess_diam;
    out.reason = "angular diameter exceeds pi/3";
    return out;
  }

  std::vector<Vec3> pts;
  for (const auto& p : poly.vertices()) pts.push_back(p.v());
  const auto& t = t0_vertices();

  // Seeds: anchored placements (a polygon vertex on a T0 vertex, an incident
  // polygon side along a T0 side) followed by the low-discrepancy grid.
  std::vector<Mat3> seeds;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t di : {std::size_t{1}, n - 1}) {
        for (std::size_t dj : {std::size_t{1}, std::size_t{2}}) {
          seeds.push_back(detail::anchored_rotation(pts[i], pts[(i + di) % n], t[j], t[(j + dj) % 3]));
        }
      }
    }
  }
  const std::size_t anchored = seeds.size();
  for (const auto& q : halton_rotations(cfg.grid_samples)) seeds.push_back(q.toRotationMatrix());

  std::vector<double> values(seeds.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) values[k] = detail::fit_margin(pts, seeds[k]);

  std::vector<std::size_t> order(seeds.size() - anchored);
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = anchored + k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  order.resize(std::min(order.size(), cfg.refine_top));
  for (std::size_t k = 0; k < anchored; ++k) order.push_back(k);

  double best = -std::numeric_limits<double>::infinity();
  Mat3 best_rot = Mat3::Identity();
  for (std::size_t k : order) {
    if (values[k] > best) {
      best = values[k];
      best_rot = seeds[k];
    }
    auto [v, r] = detail::refine_fit(pts, seeds[k], cfg.refine_iterations);
    if (v > best) {
      best = v;
      best_rot = r;
    }
  }
  out.margin = best;
  out.rotation = Quat(best_rot).normalized();
  if (best > tol) {
    out.tag = FitTag::Fits;
  } else if (best < -tol) {
    out.tag = FitTag::NoFit;
    out.reason = "no rotation found placing all vertices in T0";
  } else {
    out.tag = FitTag::Indeterminate;
  }
  return out;
}

enum class GeneralTag { Trihedral, InA0, NotInA0, Indeterminate };

inline const char* to_string(GeneralTag t) {
  switch (t) {
    case GeneralTag::Trihedral: return "TRIHEDRAL";
    case GeneralTag::InA0: return "IN_A0";
    case GeneralTag::NotInA0: return "NOT_IN_A0";
    case GeneralTag::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

struct GeneralClass {
  GeneralTag tag = GeneralTag::Indeterminate;
  std::optional<AngleClass> trihedral;
  std::optional<T0Fit> fit;
  std::string note;
};

/// Trihedral angles are classified exactly; others by whether their polygon
/// can be rotated into T0 (A0 is the set of angles that cannot).
inline GeneralClass classify_general(const SolidAngle& angle, double tol = kAngleTol,
                                     const FitSearchConfig& cfg = {}) {
  GeneralClass out;
  if (angle.size() == 3) {
    out.tag = GeneralTag::Trihedral;
    out.trihedral = classify_trihedral(angle, tol);
    return out;
  }
  out.fit = fits_in_T0(angle.polygon(), tol, cfg);
  switch (out.fit->tag) {
    case FitTag::NoFit: out.tag = GeneralTag::InA0; break;
    case FitTag::Fits:
      out.tag = GeneralTag::NotInA0;
      out.note = "fitting inside T0 is necessary, not sufficient, for an inscribed octahedron";
      break;
    case FitTag::Indeterminate: out.tag = GeneralTag::Indeterminate; break;
  }
  return out;
}

/// Path of non-special triangles from `tri` to one with a side beyond pi/3:
/// first |v1v3| grows to |v1v2| at fixed angle v1, then both grow together.
inline std::vector<SphTriangle> deformation_path(const SphTriangle& tri, std::size_t steps,
                                                 double tol = kAngleTol) {
  const AngleClass start = placement_test(tri, tol);
  if (start.tag != AngleTag::NonSpecial) {
    throw GeometryError(ErrorCode::NotNonSpecial, std::string("triangle classifies ") + to_string(start.tag));
  }
  const double longest = std::max({tri.side(0), tri.side(1), tri.side(2)});
  if (longest > kPi / 3) return {tri};

  const SphTriangle base = normalize_ordering(tri);
  const double c = arc_distance(base.vertex(0), base.vertex(1));
  const double b = arc_distance(base.vertex(0), base.vertex(2));
  const double alpha = vertex_angle(base, 0);
  const double target = kPi / 3 + 0.02;

  steps = std::max<std::size_t>(steps, 3);
  const double grow1 = c - b;
  const double grow2 = target - c;
  auto n1 = static_cast<std::size_t>(std::round(static_cast<double>(steps - 1) * grow1 / (grow1 + grow2)));
  if (grow1 > 0) n1 = std::max<std::size_t>(n1, 1);
  n1 = std::min(n1, steps - 2);
  const std::size_t n2 = steps - 1 - n1;

  std::vector<SphTriangle> path{base};
  for (std::size_t k = 1; k <= n1; ++k) {
    const double bk = b + grow1 * static_cast<double>(k) / static_cast<double>(n1);
    path.push_back(triangle_from_sas(c, bk, alpha));
  }
  for (std::size_t k = 1; k <= n2; ++k) {
    const double len = c + grow2 * static_cast<double>(k) / static_cast<double>(n2);
    path.push_back(triangle_from_sas(len, len, alpha));
  }
  for (std::size_t k = 0; k < path.size(); ++k) {
    const AngleClass cls = placement_test(path[k], tol);
    if (cls.tag != AngleTag::NonSpecial) {
      throw GeometryError(ErrorCode::PathVerificationFailed,
                          "step " + std::to_string(k) + " classifies " + to_string(cls.tag));
    }
  }
  return path;
}

}  // namespace octa
