#pragma once

// Brute-force reference implementations for cross-validation. Nothing here
// shares projection or solver code with the production modules.

#include "octa/angles.hpp"
#include "octa/octahedron.hpp"
#include "octa/polytope.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace octa::oracle {

struct SearchConfig {
  int seeds_per_assignment = 50;
  std::uint64_t seed = 0;
  int max_iterations = 60;
  /// Sector membership tolerance, relative to the octahedron scale.
  double sector_tol = 1e-9;
};

struct SearchResult {
  /// Distinct inscribed octahedra found, apex-local scale 1, in world coordinates.
  std::vector<OctahedronPose> poses;
  std::size_t assignments = 0;
  std::size_t solves = 0;
  std::string resolution_note;
};

namespace detail {

using Assignment = std::array<int, 6>;

// The 24 rotations of the octahedron as permutations of vertex labels
// (label i < 3 is +e_i, label i + 3 is -e_i).
inline const std::vector<std::array<int, 6>>& rotation_label_perms() {
  static const std::vector<std::array<int, 6>> perms = [] {
    std::vector<std::array<int, 6>> out;
    std::array<int, 3> axes{0, 1, 2};
    do {
      int inversions = 0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          if (axes[i] > axes[j]) ++inversions;
      const int parity = inversions % 2 == 0 ? 1 : -1;
      for (int signs = 0; signs < 8; ++signs) {
        int det = parity;
        std::array<int, 3> s{};
        for (int i = 0; i < 3; ++i) {
          s[static_cast<std::size_t>(i)] = (signs >> i) & 1 ? -1 : 1;
          det *= s[static_cast<std::size_t>(i)];
        }
        if (det != 1) continue;
        std::array<int, 6> p{};
        for (int i = 0; i < 3; ++i) {
          const int img = axes[static_cast<std::size_t>(i)];
          const bool pos = s[static_cast<std::size_t>(i)] > 0;
          p[static_cast<std::size_t>(i)] = pos ? img : img + 3;
          p[static_cast<std::size_t>(i + 3)] = pos ? img + 3 : img;
        }
        out.push_back(p);
      }
    } while (std::next_permutation(axes.begin(), axes.end()));
    return out;
  }();
  return perms;
}

// One representative per orbit of vertex-to-facet assignments under the
// octahedron's rotations. Trihedral cones use the (3,2,1) and (2,2,2)
// patterns; wider cones allow at most 3 vertices per facet.
inline std::vector<Assignment> assignment_representatives(int facets) {
  std::vector<Assignment> reps;
  std::set<Assignment> seen;
  Assignment a{};
  const int total = [&] {
    int t = 1;
    for (int i = 0; i < 6; ++i) t *= facets;
    return t;
  }();
  for (int code = 0; code < total; ++code) {
    int c = code;
    std::vector<int> counts(static_cast<std::size_t>(facets), 0);
    for (int i = 0; i < 6; ++i) {
      a[static_cast<std::size_t>(i)] = c % facets;
      c /= facets;
      ++counts[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])];
    }
    bool ok = true;
    for (int k : counts) {
      if (k > 3) ok = false;
      if (facets == 3 && k == 0) ok = false;
    }
    if (!ok) continue;
    Assignment canon = a;
    for (const auto& perm : rotation_label_perms()) {
      Assignment img{};
      // Vertex perm[i] receives the facet vertex i had.
      for (int i = 0; i < 6; ++i) img[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = a[static_cast<std::size_t>(i)];
      canon = std::min(canon, img);
    }
    if (seen.insert(canon).second) reps.push_back(canon);
  }
  return reps;
}

inline std::array<Vec3, 6> local_vertices(const Vec3& center, const Mat3& r) {
  std::array<Vec3, 6> v;
  for (int i = 0; i < 3; ++i) {
    v[static_cast<std::size_t>(i)] = center + r.col(i);
    v[static_cast<std::size_t>(i + 3)] = center - r.col(i);
  }
  return v;
}

}  // namespace detail

/// Searches for regular octahedra inscribed in the boundary of a cone by
/// enumerating vertex-to-facet assignments and solving the plane equations
/// from random seeds (finite-difference Levenberg-Marquardt, scale fixed at
/// 1 since the cone is invariant under homothety about its apex).
inline SearchResult direct_angle_search(const SolidAngle& angle, const SearchConfig& cfg = {}) {
  SearchResult out;
  const std::size_t nf = angle.size();
  std::vector<Vec3> normals;
  for (std::size_t i = 0; i < nf; ++i) {
    const Vec3& a = angle.edges()[i];
    const Vec3& b = angle.edges()[(i + 1) % nf];
    normals.push_back(a.cross(b).normalized());
  }
  const auto reps = detail::assignment_representatives(static_cast<int>(nf));
  out.assignments = reps.size();
  SplitMix rng(cfg.seed, 0x0AC1E);
  std::vector<OctahedronPose> found;

  for (const auto& assign : reps) {
    for (int s = 0; s < cfg.seeds_per_assignment; ++s) {
      ++out.solves;
      Mat3 rot = rng.rotation().toRotationMatrix();
      Vec3 dir = Vec3::Zero();
      for (const auto& e : angle.edges()) dir += rng.uniform(0.05, 1.0) * e;
      Vec3 center = std::exp(rng.uniform(0.0, std::log(40.0))) * dir.normalized();

      auto residuals = [&](const Vec3& c, const Mat3& r) {
        const auto v = detail::local_vertices(c, r);
        Eigen::Matrix<double, 6, 1> res;
        for (int k = 0; k < 6; ++k) {
          res(k) = normals[static_cast<std::size_t>(assign[static_cast<std::size_t>(k)])].dot(v[static_cast<std::size_t>(k)]);
        }
        return res;
      };
      double lambda = 1e-3;
      Eigen::Matrix<double, 6, 1> res = residuals(center, rot);
      for (int it = 0; it < cfg.max_iterations && res.lpNorm<Eigen::Infinity>() > 1e-13; ++it) {
        Eigen::Matrix<double, 6, 6> jac;
        constexpr double h = 1e-7;
        for (int p = 0; p < 6; ++p) {
          Vec3 dc = Vec3::Zero(), dw = Vec3::Zero();
          (p < 3 ? dc : dw)(p % 3) = h;
          jac.col(p) = (residuals(center + dc, exp_so3(dw) * rot) - residuals(center - dc, exp_so3(-dw) * rot)) / (2 * h);
        }
        bool improved = false;
        for (int tries = 0; tries < 10 && !improved; ++tries) {
          const Eigen::Matrix<double, 6, 6> lhs =
              jac.transpose() * jac + lambda * Eigen::Matrix<double, 6, 6>::Identity();
          const Eigen::Matrix<double, 6, 1> step = -lhs.ldlt().solve(jac.transpose() * res);
          const Vec3 nc = center + step.head<3>();
          const Mat3 nr = exp_so3(step.tail<3>()) * rot;
          const auto nres = residuals(nc, nr);
          if (nres.squaredNorm() < res.squaredNorm()) {
            center = nc;
            rot = nr;
            res = nres;
            lambda = std::max(lambda / 5, 1e-12);
            improved = true;
          } else {
            lambda *= 10;
          }
        }
        if (!improved) break;
      }
      if (res.lpNorm<Eigen::Infinity>() > 1e-10) continue;

      // Sector membership: inside the cone and on the assigned facet plane.
      const auto v = detail::local_vertices(center, rot);
      bool inside = true;
      for (const auto& x : v)
        for (const auto& n : normals)
          if (n.dot(x) < -cfg.sector_tol) inside = false;
      if (!inside) continue;

      OctahedronPose pose;
      pose.center = angle.apex() + center;
      pose.rotation = Quat(rot).normalized();
      pose.scale = 1.0;
      bool duplicate = false;
      for (const auto& f : found)
        if (same_octahedron(f, pose, 1e-6)) duplicate = true;
      if (!duplicate) found.push_back(pose);
    }
  }
  out.poses = std::move(found);
  out.resolution_note = std::to_string(out.assignments) + " assignment classes x " +
                        std::to_string(cfg.seeds_per_assignment) +
                        " random seeds; an empty result means none found at this resolution";
  return out;
}

namespace detail {

// Vertices of { n_i . x <= d_i } by exhaustive triple intersection.
inline std::vector<Vec3> enumerate_vertices(const std::vector<Halfspace>& hs, double tol) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j)
      for (std::size_t k = j + 1; k < hs.size(); ++k) {
        Mat3 a;
        a << hs[i].normal.transpose(), hs[j].normal.transpose(), hs[k].normal.transpose();
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Vec3 x = a.colPivHouseholderQr().solve(Vec3(hs[i].offset, hs[j].offset, hs[k].offset));
        bool ok = true;
        for (const auto& h : hs) ok = ok && (h.normal.dot(x) - h.offset <= tol);
        if (ok) out.push_back(x);
      }
  return out;
}

inline double segment_distance(const Vec3& x, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((x - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (x - (a + t * ab)).norm();
}

}  // namespace detail

/// Distance from x to the inner parallel body of P at depth eps, by
/// enumerating every facet, edge and vertex of that body.
inline double distance_to_inner_body(const ConvexPolytope& p, double epsilon, const Vec3& x) {
  std::vector<Halfspace> hs = p.halfspaces();
  for (auto& h : hs) h.offset -= epsilon;
  const double tol = 1e-10 * std::max(1.0, p.diameter());
  bool inside = true;
  for (const auto& h : hs) inside = inside && (h.normal.dot(x) - h.offset <= 0);
  if (inside) return 0.0;

  const auto verts = detail::enumerate_vertices(hs, tol);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : verts) best = std::min(best, (x - v).norm());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      int shared = 0;
      for (const auto& h : hs) {
        if (std::abs(h.normal.dot(verts[i]) - h.offset) <= tol && std::abs(h.normal.dot(verts[j]) - h.offset) <= tol) {
          ++shared;
        }
      }
      if (shared >= 2) best = std::min(best, detail::segment_distance(x, verts[i], verts[j]));
    }
  for (const auto& h : hs) {
    const Vec3 foot = x - (h.normal.dot(x) - h.offset) * h.normal;
    bool ok = true;
    for (const auto& g : hs) ok = ok && (g.normal.dot(foot) - g.offset <= tol);
    if (ok) best = std::min(best, (x - foot).norm());
  }
  return best;
}

/// Definitional membership in P_eps: some ball of radius eps inside P
/// contains x. Centers of such balls form the inner parallel body.
inline bool membership_oracle(const ConvexPolytope& p, double epsilon, const Vec3& x) {
  return distance_to_inner_body(p, epsilon, x) <= epsilon;
}

struct MonteCarloArea {
  double value = 0;
  double stderr_ = 0;
};

/// Solid angle of a cone in steradians by uniform sphere sampling.
inline MonteCarloArea mc_solid_angle_area(const SolidAngle& angle, std::size_t samples, std::uint64_t seed = 0) {
  std::vector<Vec3> normals;
  const std::size_t n = angle.size();
  for (std::size_t i = 0; i < n; ++i) normals.push_back(angle.edges()[i].cross(angle.edges()[(i + 1) % n]));
  SplitMix rng(seed, 0x5A3B);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec3 u = rng.unit_vector();
    bool in = true;
    for (const auto& nn : normals) in = in && nn.dot(u) >= 0;
    if (in) ++hits;
  }
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  MonteCarloArea out;
  out.value = 4 * kPi * frac;
  out.stderr_ = 4 * kPi * std::sqrt(frac * (1 - frac) / static_cast<double>(samples));
  return out;
}

}  // namespace octa::oracle
