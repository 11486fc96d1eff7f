#pragma once

#include "octa/common.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace octa {

/// A regular octahedron as a positive similarity applied to the unit cross
/// polytope: vertices center +/- scale * R * e_i.
struct OctahedronPose {
  Vec3 center = Vec3::Zero();
  Quat rotation = Quat::Identity();
  double scale = 1.0;

  Mat3 rotation_matrix() const { return rotation.normalized().toRotationMatrix(); }

  /// Vertex order: a, b, c, a', b', c' (primed vertices are opposite).
  std::array<Vec3, 6> vertices() const {
    const Mat3 r = rotation_matrix();
    std::array<Vec3, 6> out;
    for (int i = 0; i < 3; ++i) {
      out[static_cast<std::size_t>(i)] = center + scale * r.col(i);
      out[static_cast<std::size_t>(i + 3)] = center - scale * r.col(i);
    }
    return out;
  }

  double diameter() const { return 2.0 * scale; }
};

/// Index pairs of the 12 edges (all pairs except opposite vertices).
inline const std::array<std::pair<int, int>, 12>& octahedron_edges() {
  static const std::array<std::pair<int, int>, 12> edges = [] {
    std::array<std::pair<int, int>, 12> e{};
    std::size_t k = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        if (j != i + 3) e[k++] = {i, j};
    return e;
  }();
  return edges;
}

/// Eight faces, counterclockwise seen from outside.
inline const std::array<std::array<int, 3>, 8>& octahedron_faces() {
  static const std::array<std::array<int, 3>, 8> faces = [] {
    std::array<std::array<int, 3>, 8> f{};
    std::size_t k = 0;
    for (int sx = 0; sx < 2; ++sx)
      for (int sy = 0; sy < 2; ++sy)
        for (int sz = 0; sz < 2; ++sz) {
          std::array<int, 3> face{0 + 3 * sx, 1 + 3 * sy, 2 + 3 * sz};
          // An odd number of negative axes flips the orientation.
          if ((sx + sy + sz) % 2 == 1) std::swap(face[1], face[2]);
          f[k++] = face;
        }
    return f;
  }();
  return faces;
}

/// Returns a pose whose rotation matrix is `m` when det(m) = +1; for an
/// improper orthogonal `m` the first axis is flipped, which leaves the vertex
/// set unchanged.
inline Quat proper_quaternion(Mat3 m) {
  if (m.determinant() < 0) m.col(0) = -m.col(0);
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  Quat q(r);
  q.normalize();
  return q;
}

/// Largest distance from a vertex of `p` to the closest vertex of `q`.
inline double vertex_set_distance(const OctahedronPose& p, const OctahedronPose& q) {
  const auto vp = p.vertices();
  const auto vq = q.vertices();
  double worst = 0;
  for (const auto& x : vp) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : vq) best = std::min(best, (x - y).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

/// Same octahedron up to its own symmetry group (vertex relabeling).
inline bool same_octahedron(const OctahedronPose& p, const OctahedronPose& q, double tol) {
  return std::abs(p.scale - q.scale) <= tol && (p.center - q.center).norm() <= tol &&
         vertex_set_distance(p, q) <= tol;
}

/// Pose transformed by an isometry x -> m x + t (m may be improper).
inline OctahedronPose transformed(const OctahedronPose& pose, const Mat3& m, const Vec3& t) {
  OctahedronPose out;
  out.center = m * pose.center + t;
  out.rotation = proper_quaternion(m * pose.rotation_matrix());
  out.scale = pose.scale;
  return out;
}

}  // namespace octa
