#pragma once

// Spherical trigonometry on the unit sphere: distances, angles, areas and
// hemisphere-based containment predicates for convex spherical polygons.

#include "octa/common.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace octa {

class SpherePoint {
 public:
  SpherePoint() : dir_(Vec3::UnitZ()) {}

  /// Normalizes `v`; throws OutOfRange for a (near) zero vector.
  explicit SpherePoint(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 1e-300) || !std::isfinite(n)) {
      throw GeometryError(ErrorCode::OutOfRange, "cannot normalize a zero or non-finite vector");
    }
    dir_ = v / n;
  }
  SpherePoint(double x, double y, double z) : SpherePoint(Vec3(x, y, z)) {}

  const Vec3& v() const { return dir_; }
  SpherePoint antipode() const { return SpherePoint(-dir_); }

 private:
  Vec3 dir_;
};

/// Great-circle distance in [0, pi].
inline double arc_distance(const Vec3& p, const Vec3& q) {
  return std::atan2(p.cross(q).norm(), p.dot(q));
}
inline double arc_distance(const SpherePoint& p, const SpherePoint& q) {
  return arc_distance(p.v(), q.v());
}

/// Signed angular distance of `p` from the great circle through a -> b;
/// positive on the left (counterclockwise side seen from outside).
inline double signed_side_distance(const Vec3& a, const Vec3& b, const Vec3& p) {
  const Vec3 n = a.cross(b).normalized();
  return std::asin(std::clamp(n.dot(p), -1.0, 1.0));
}

namespace detail {

// Spherical excess from the vertex vectors: tan(E/2) = |a.(b x c)| / (1 + a.b + b.c + c.a).
// Same half-angle identity as l'Huilier but without the s - a cancellation on slivers.
inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double det = std::abs(a.dot(b.cross(c)));
  return 2.0 * std::atan2(det, 1.0 + a.dot(b) + b.dot(c) + c.dot(a));
}

// Interior angle at `a` of the triangle (a, b, c).
inline double corner_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n1 = a.cross(b);
  const Vec3 n2 = a.cross(c);
  return std::atan2(n1.cross(n2).norm(), n1.dot(n2));
}

}  // namespace detail

enum class Containment { Inside, Boundary, Outside };

inline const char* to_string(Containment c) {
  switch (c) {
    case Containment::Inside: return "INSIDE";
    case Containment::Boundary: return "BOUNDARY";
    case Containment::Outside: return "OUTSIDE";
  }
  return "?";
}

enum class Closure { Open, Closed };

/// Collapses a three-valued containment answer to a boolean.
inline bool is_inside(Containment c, Closure closure) {
  return c == Containment::Inside || (closure == Closure::Closed && c == Containment::Boundary);
}

inline Containment classify_margin(double margin, double tol) {
  if (margin > tol) return Containment::Inside;
  if (margin < -tol) return Containment::Outside;
  return Containment::Boundary;
}

/// Positively oriented spherical triangle inside an open hemisphere.
class SphTriangle {
 public:
  SphTriangle(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c) : v_{a, b, c} {
    for (int i = 0; i < 3; ++i) {
      const double d = arc_distance(v_[i], v_[(i + 1) % 3]);
      if (!(d > kAngleTol) || !(d < kPi - kAngleTol)) {
        throw GeometryError(ErrorCode::DegenerateTriangle,
                            "vertices coincide or are antipodal (side " + std::to_string(d) + ")");
      }
    }
    double det = v_[0].v().dot(v_[1].v().cross(v_[2].v()));
    if (det < 0) {
      std::swap(v_[1], v_[2]);
      det = -det;
    }
    if (!(det > 0)) {
      throw GeometryError(ErrorCode::DegenerateTriangle, "vertices lie on a great circle");
    }
  }

  const SpherePoint& vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::array<SpherePoint, 3>& vertices() const { return v_; }

  /// Length of the side opposite vertex i.
  double side(int i) const { return arc_distance(vertex((i + 1) % 3), vertex((i + 2) % 3)); }

  double determinant() const { return v_[0].v().dot(v_[1].v().cross(v_[2].v())); }

 private:
  std::array<SpherePoint, 3> v_;
};

/// Interior spherical angle at vertex i, in (0, pi).
inline double vertex_angle(const SphTriangle& tri, int i) {
  return detail::corner_angle(tri.vertex(i).v(), tri.vertex((i + 1) % 3).v(),
                              tri.vertex((i + 2) % 3).v());
}

/// Spherical excess.
inline double area(const SphTriangle& tri) {
  return detail::triangle_area(tri.vertex(0).v(), tri.vertex(1).v(), tri.vertex(2).v());
}

/// Smallest signed distance from `p` to the three oriented side circles.
inline double containment_margin(const SphTriangle& tri, const Vec3& p) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    m = std::min(m, signed_side_distance(tri.vertex(i).v(), tri.vertex((i + 1) % 3).v(), p));
  }
  return m;
}

inline Containment contains(const SphTriangle& tri, const SpherePoint& p, double tol = kAngleTol) {
  return classify_margin(containment_margin(tri, p.v()), tol);
}

/// Point on the minor arc from a toward b at angular distance d.
inline SpherePoint point_on_arc(const SpherePoint& a, const SpherePoint& b, double d,
                                double tol = kAngleTol) {
  const double len = arc_distance(a, b);
  if (!(len < kPi - kAngleTol)) {
    throw GeometryError(ErrorCode::OutOfRange, "arc endpoints are antipodal");
  }
  if (d < -tol || d > len + tol) {
    throw GeometryError(ErrorCode::OutOfRange, "distance outside [0, |ab|]");
  }
  if (len < 1e-300) return a;
  const Vec3 tangent = (b.v() - a.v().dot(b.v()) * a.v()).normalized();
  return SpherePoint(std::cos(d) * a.v() + std::sin(d) * tangent);
}

/// Geodesically convex, positively oriented polygon inside an open hemisphere.
class SphPolygon {
 public:
  explicit SphPolygon(std::vector<SpherePoint> vertices) : v_(std::move(vertices)) {
    if (v_.size() < 3) throw GeometryError(ErrorCode::InvalidPolygon, "fewer than 3 vertices");
    const std::size_t n = v_.size();
    Vec3 sum = Vec3::Zero();
    for (const auto& p : v_) sum += p.v();
    if (sum.norm() < 1e-9) throw GeometryError(ErrorCode::InvalidPolygon, "not in a hemisphere");
    const Vec3 c = sum.normalized();
    double winding = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = arc_distance(v_[i], v_[(i + 1) % n]);
      if (!(d > kAngleTol) || !(d < kPi - kAngleTol)) {
        throw GeometryError(ErrorCode::InvalidPolygon, "consecutive vertices coincide or are antipodal");
      }
      winding += c.dot(v_[i].v().cross(v_[(i + 1) % n].v()));
    }
    if (winding < 0) std::reverse(v_.begin(), v_.end());
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& a = v_[i].v();
      const Vec3& b = v_[(i + 1) % n].v();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == (i + 1) % n) continue;
        if (signed_side_distance(a, b, v_[j].v()) < -1e-12) {
          throw GeometryError(ErrorCode::InvalidPolygon, "polygon is not convex");
        }
      }
    }
    // Sum of inward edge normals: strictly positive on every vertex of a convex cone.
    Vec3 m = Vec3::Zero();
    for (std::size_t i = 0; i < n; ++i) m += v_[i].v().cross(v_[(i + 1) % n].v()).normalized();
    for (const auto& p : v_) {
      if (!(m.dot(p.v()) > 0)) throw GeometryError(ErrorCode::InvalidPolygon, "not in an open hemisphere");
    }
  }

  std::size_t size() const { return v_.size(); }
  const SpherePoint& vertex(std::size_t i) const { return v_[i]; }
  const std::vector<SpherePoint>& vertices() const { return v_; }

  /// Normalized vertex mean.
  SpherePoint centroid() const {
    Vec3 sum = Vec3::Zero();
    for (const auto& p : v_) sum += p.v();
    return SpherePoint(sum);
  }

  double diameter() const {
    double d = 0;
    for (std::size_t i = 0; i < v_.size(); ++i)
      for (std::size_t j = i + 1; j < v_.size(); ++j) d = std::max(d, arc_distance(v_[i], v_[j]));
    return d;
  }

  double area() const {
    double a = 0;
    for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
      a += detail::triangle_area(v_[0].v(), v_[i].v(), v_[i + 1].v());
    }
    return a;
  }

 private:
  std::vector<SpherePoint> v_;
};

inline double containment_margin(const SphPolygon& poly, const Vec3& p) {
  double m = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    m = std::min(m, signed_side_distance(poly.vertex(i).v(), poly.vertex((i + 1) % n).v(), p));
  }
  return m;
}

inline Containment polygon_contains(const SphPolygon& poly, const SpherePoint& p,
                                    double tol = kAngleTol) {
  return classify_margin(containment_margin(poly, p.v()), tol);
}

/// Apply a rotation (or any orthogonal map) to every vertex.
inline SphTriangle transformed(const SphTriangle& tri, const Mat3& m) {
  return SphTriangle(SpherePoint(m * tri.vertex(0).v()), SpherePoint(m * tri.vertex(1).v()),
                     SpherePoint(m * tri.vertex(2).v()));
}

/// Triangle with prescribed side lengths: |v0v1| = c, |v0v2| = b, |v1v2| = a.
/// v0 is placed at e3, v1 in the xz half-plane with x > 0.
inline SphTriangle triangle_from_sides(double c, double b, double a) {
  const double s = 0.5 * (a + b + c);
  if (!(a > 0 && b > 0 && c > 0 && s - a > 0 && s - b > 0 && s - c > 0 && s < kPi)) {
    throw GeometryError(ErrorCode::DegenerateTriangle, "side lengths violate the triangle inequality");
  }
  // Half-angle form of the law of cosines.
  const double h = std::sin(s - b) * std::sin(s - c) / (std::sin(b) * std::sin(c));
  const double angle = 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
  const Vec3 v0 = Vec3::UnitZ();
  const Vec3 v1(std::sin(c), 0, std::cos(c));
  const Vec3 v2(std::sin(b) * std::cos(angle), std::sin(b) * std::sin(angle), std::cos(b));
  return SphTriangle(SpherePoint(v0), SpherePoint(v1), SpherePoint(v2));
}

}  // namespace octa
