#pragma once

// Convex polytopes in dual H/V representation, the inner parallel body used
// to represent the smoothing P_eps = inner(P, eps) + B_eps, and the distance
// queries the inscriber needs.

#include "octa/angles.hpp"
#include "octa/common.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace octa {

/// Closed halfspace { x : normal . x <= offset } with unit outward normal.
struct Halfspace {
  Vec3 normal;
  double offset = 0;

  double violation(const Vec3& x) const { return normal.dot(x) - offset; }
};

namespace detail {

// Dense tableau simplex for  max c.x  s.t.  A x <= b, x >= 0, with b >= 0.
// Bland's rule; returns nullopt when unbounded.
inline std::optional<Eigen::VectorXd> simplex_max(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                                  const Eigen::VectorXd& c) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  t.block(0, 0, m, n) = a;
  t.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  t.block(0, n + m, m, 1) = b;
  t.block(m, 0, 1, n) = -c.transpose();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;
  constexpr double eps = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -eps) {
        col = j;
        break;
      }
    }
    if (col < 0) break;
    Eigen::Index row = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, col) > eps) {
        const double ratio = t(i, n + m) / t(i, col);
        if (ratio < best - eps ||
            (ratio < best + eps && row >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(row)])) {
          best = ratio;
          row = i;
        }
      }
    }
    if (row < 0) return std::nullopt;
    t.row(row) /= t(row, col);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != row && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) x(basis[static_cast<std::size_t>(i)]) = t(i, n + m);
  }
  return x;
}

}  // namespace detail

enum class FeatureKind { Facet, Edge, Vertex };

inline const char* to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::Facet: return "facet";
    case FeatureKind::Edge: return "edge";
    case FeatureKind::Vertex: return "vertex";
  }
  return "?";
}

struct Feature {
  FeatureKind kind = FeatureKind::Facet;
  std::size_t index = 0;
};

struct Projection {
  Vec3 point;
  double distance = 0;
  std::vector<std::size_t> active;
};

class ConvexPolytope {
 public:
  /// H-representation input; redundant and duplicate halfspaces are dropped.
  static ConvexPolytope from_halfspaces(std::vector<Halfspace> input) {
    if (input.size() < 4) throw GeometryError(ErrorCode::Degenerate, "need at least 4 halfspaces");
    for (auto& h : input) {
      const double n = h.normal.norm();
      if (!(n > 1e-12) || !std::isfinite(h.offset)) {
        throw GeometryError(ErrorCode::Degenerate, "zero or non-finite halfspace normal");
      }
      h.normal /= n;
      h.offset /= n;
    }
    double scale = 1.0;
    for (const auto& h : input) scale = std::max(scale, std::abs(h.offset));
    const double tol = 1e-9 * scale;

    std::vector<Vec3> verts;
    const std::size_t m = input.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          Mat3 a;
          a.row(0) = input[i].normal.transpose();
          a.row(1) = input[j].normal.transpose();
          a.row(2) = input[k].normal.transpose();
          if (std::abs(a.determinant()) < 1e-10) continue;
          const Vec3 x = a.partialPivLu().solve(Vec3(input[i].offset, input[j].offset, input[k].offset));
          bool feasible = true;
          for (const auto& h : input) {
            if (h.violation(x) > tol) {
              feasible = false;
              break;
            }
          }
          if (!feasible) continue;
          bool duplicate = false;
          for (const auto& v : verts) {
            if ((v - x).norm() <= 10 * tol) {
              duplicate = true;
              break;
            }
          }
          if (!duplicate) verts.push_back(x);
        }
    if (verts.size() < 4) throw GeometryError(ErrorCode::Degenerate, "halfspaces do not bound a 3D polytope");

    ConvexPolytope p;
    std::sort(verts.begin(), verts.end(), [](const Vec3& a, const Vec3& b) {
      return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
    });
    p.vertices_ = std::move(verts);
    p.diameter_ = 0;
    for (std::size_t i = 0; i < p.vertices_.size(); ++i)
      for (std::size_t j = i + 1; j < p.vertices_.size(); ++j)
        p.diameter_ = std::max(p.diameter_, (p.vertices_[i] - p.vertices_[j]).norm());
    if (!(p.diameter_ > 0)) throw GeometryError(ErrorCode::Degenerate, "zero diameter");
    p.tol_ = 1e-9 * std::max(p.diameter_, scale);

    // Keep facet-defining halfspaces: at least 3 incident vertices spanning a plane, no duplicates.
    for (const auto& h : input) {
      std::vector<std::size_t> on;
      for (std::size_t v = 0; v < p.vertices_.size(); ++v)
        if (std::abs(h.violation(p.vertices_[v])) <= p.tol_) on.push_back(v);
      if (on.size() < 3) continue;
      bool spans = false;
      for (std::size_t a = 1; a < on.size() && !spans; ++a)
        for (std::size_t b = a + 1; b < on.size() && !spans; ++b) {
          const Vec3 cr = (p.vertices_[on[a]] - p.vertices_[on[0]]).cross(p.vertices_[on[b]] - p.vertices_[on[0]]);
          spans = cr.norm() > 1e-9 * p.diameter_ * p.diameter_;
        }
      if (!spans) continue;
      bool duplicate = false;
      for (const auto& kept : p.halfspaces_) {
        if ((kept.normal - h.normal).norm() < 1e-9 && std::abs(kept.offset - h.offset) <= p.tol_) duplicate = true;
      }
      if (!duplicate) p.halfspaces_.push_back(h);
    }
    p.finish();
    return p;
  }

  /// V-representation input: facets are reconstructed from the convex hull.
  static ConvexPolytope from_points(const std::vector<Vec3>& points) {
    if (points.size() < 4) throw GeometryError(ErrorCode::Degenerate, "need at least 4 points");
    double diam = 0;
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j) diam = std::max(diam, (points[i] - points[j]).norm());
    if (!(diam > 0)) throw GeometryError(ErrorCode::Degenerate, "coincident points");
    const double tol = 1e-9 * diam;
    std::vector<Halfspace> planes;
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Vec3 normal = (points[j] - points[i]).cross(points[k] - points[i]);
          if (normal.norm() < 1e-9 * diam * diam) continue;
          normal.normalize();
          double offset = normal.dot(points[i]);
          int above = 0, below = 0;
          for (const auto& q : points) {
            const double s = normal.dot(q) - offset;
            if (s > tol) ++above;
            if (s < -tol) ++below;
          }
          if (above > 0 && below > 0) continue;
          if (above == 0 && below == 0) {
            throw GeometryError(ErrorCode::Degenerate, "points are coplanar");
          }
          if (above > 0) {
            normal = -normal;
            offset = -offset;
          }
          bool duplicate = false;
          for (const auto& h : planes) {
            if ((h.normal - normal).norm() < 1e-9 && std::abs(h.offset - offset) <= tol) duplicate = true;
          }
          if (!duplicate) planes.push_back({normal, offset});
        }
    std::sort(planes.begin(), planes.end(), [](const Halfspace& a, const Halfspace& b) {
      if (a.normal != b.normal) {
        return std::lexicographical_compare(a.normal.data(), a.normal.data() + 3, b.normal.data(), b.normal.data() + 3);
      }
      return a.offset < b.offset;
    });
    ConvexPolytope p = from_halfspaces(planes);
    for (const auto& v : p.vertices_) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : points) best = std::min(best, (q - v).norm());
      if (best > 1e-7 * diam) throw GeometryError(ErrorCode::Inconsistent, "hull vertex does not match an input point");
    }
    return p;
  }

  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::vector<std::size_t>>& vertex_facets() const { return vertex_facets_; }
  /// Vertex cycle of each facet, counterclockwise around the outward normal.
  const std::vector<std::vector<std::size_t>>& facet_vertices() const { return facet_vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  double diameter() const { return diameter_; }
  double inradius() const { return inradius_; }
  const Vec3& chebyshev_center() const { return cheb_center_; }
  Vec3 vertex_centroid() const {
    Vec3 c = Vec3::Zero();
    for (const auto& v : vertices_) c += v;
    return c / static_cast<double>(vertices_.size());
  }
  /// Incidence tolerance, relative to the diameter.
  double tolerance() const { return tol_; }

  bool contains(const Vec3& x, double tol = 0) const {
    for (const auto& h : halfspaces_)
      if (h.violation(x) > tol) return false;
    return true;
  }

  /// Euclidean projection onto the polytope by a primal active-set method.
  Projection project(const Vec3& x) const {
    Projection out;
    if (contains(x)) {
      out.point = x;
      return out;
    }
    Vec3 y = cheb_center_;
    std::vector<std::size_t> work;
    const double tiny = 1e-14 * diameter_;
    for (int iter = 0; iter < 200; ++iter) {
      Vec3 z = x;
      Eigen::VectorXd lambda;
      if (!work.empty()) {
        Eigen::MatrixXd a(static_cast<Eigen::Index>(work.size()), 3);
        Eigen::VectorXd d(static_cast<Eigen::Index>(work.size()));
        for (std::size_t k = 0; k < work.size(); ++k) {
          a.row(static_cast<Eigen::Index>(k)) = halfspaces_[work[k]].normal.transpose();
          d(static_cast<Eigen::Index>(k)) = halfspaces_[work[k]].offset;
        }
        const Eigen::MatrixXd gram = a * a.transpose();
        auto solver = gram.completeOrthogonalDecomposition();
        lambda = solver.solve(a * x - d);
        z = x - a.transpose() * lambda;
      }
      const Vec3 step = z - y;
      if (step.norm() <= tiny) {
        y = z;
        std::size_t drop = work.size();
        double most_negative = -1e-15;
        for (std::size_t k = 0; k < work.size(); ++k) {
          if (lambda(static_cast<Eigen::Index>(k)) < most_negative) {
            most_negative = lambda(static_cast<Eigen::Index>(k));
            drop = k;
          }
        }
        if (drop == work.size()) break;
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(drop));
        continue;
      }
      double alpha = 1.0;
      std::size_t blocking = halfspaces_.size();
      for (std::size_t i = 0; i < halfspaces_.size(); ++i) {
        if (std::find(work.begin(), work.end(), i) != work.end()) continue;
        const double rate = halfspaces_[i].normal.dot(step);
        if (rate <= 1e-300) continue;
        const double t = std::max(0.0, -halfspaces_[i].violation(y)) / rate;
        if (t < alpha) {
          alpha = t;
          blocking = i;
        }
      }
      y += alpha * step;
      if (blocking < halfspaces_.size()) {
        if (work.size() < 3) {
          work.push_back(blocking);
        } else {
          break;
        }
      }
    }
    out.point = y;
    out.distance = (x - y).norm();
    for (std::size_t i = 0; i < halfspaces_.size(); ++i)
      if (std::abs(halfspaces_[i].violation(y)) <= tol_) out.active.push_back(i);
    return out;
  }

  /// Index of the edge joining two vertices, if they are adjacent.
  std::optional<std::size_t> edge_index(std::size_t u, std::size_t v) const {
    if (u > v) std::swap(u, v);
    for (std::size_t e = 0; e < edges_.size(); ++e)
      if (edges_[e].first == u && edges_[e].second == v) return e;
    return std::nullopt;
  }

 private:
  void finish() {
    if (halfspaces_.size() < 4) throw GeometryError(ErrorCode::Degenerate, "fewer than 4 facets");
    const std::size_t nv = vertices_.size();
    vertex_facets_.assign(nv, {});
    facet_vertices_.assign(halfspaces_.size(), {});
    for (std::size_t v = 0; v < nv; ++v) {
      for (std::size_t f = 0; f < halfspaces_.size(); ++f) {
        const double s = halfspaces_[f].violation(vertices_[v]);
        if (s > tol_) throw GeometryError(ErrorCode::Inconsistent, "vertex violates a halfspace");
        if (std::abs(s) <= tol_) {
          vertex_facets_[v].push_back(f);
          facet_vertices_[f].push_back(v);
        }
      }
      if (vertex_facets_[v].size() < 3) {
        throw GeometryError(ErrorCode::Inconsistent, "vertex with fewer than 3 active facets");
      }
    }
    for (std::size_t u = 0; u < nv; ++u)
      for (std::size_t v = u + 1; v < nv; ++v) {
        std::size_t shared = 0;
        for (std::size_t f : vertex_facets_[u])
          if (std::find(vertex_facets_[v].begin(), vertex_facets_[v].end(), f) != vertex_facets_[v].end()) ++shared;
        if (shared >= 2) edges_.emplace_back(u, v);
      }
    for (std::size_t v = 0; v < nv; ++v) {
      std::size_t degree = 0;
      for (const auto& e : edges_)
        if (e.first == v || e.second == v) ++degree;
      if (degree != vertex_facets_[v].size()) {
        throw GeometryError(ErrorCode::Degenerate, "polyhedron is unbounded (a vertex has an unbounded edge)");
      }
    }
    for (std::size_t f = 0; f < halfspaces_.size(); ++f) {
      auto& cyc = facet_vertices_[f];
      Vec3 c = Vec3::Zero();
      for (std::size_t v : cyc) c += vertices_[v];
      c /= static_cast<double>(cyc.size());
      const Vec3 n = halfspaces_[f].normal;
      const Vec3 u = any_orthogonal(n);
      const Vec3 w = n.cross(u);
      std::sort(cyc.begin(), cyc.end(), [&](std::size_t a, std::size_t b) {
        const Vec3 da = vertices_[a] - c, db = vertices_[b] - c;
        return std::atan2(w.dot(da), u.dot(da)) < std::atan2(w.dot(db), u.dot(db));
      });
    }
    compute_chebyshev();
    if (!(inradius_ > 1e-6 * diameter_)) throw GeometryError(ErrorCode::Degenerate, "polytope is flat");
  }

  void compute_chebyshev() {
    const Vec3 x0 = vertex_centroid();
    const auto m = static_cast<Eigen::Index>(halfspaces_.size());
    Eigen::MatrixXd a(m, 7);
    Eigen::VectorXd b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& h = halfspaces_[static_cast<std::size_t>(i)];
      a.block(i, 0, 1, 3) = h.normal.transpose();
      a.block(i, 3, 1, 3) = -h.normal.transpose();
      a(i, 6) = 1.0;
      b(i) = std::max(0.0, -h.violation(x0));
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(7);
    c(6) = 1.0;
    const auto sol = detail::simplex_max(a, b, c);
    if (!sol) throw GeometryError(ErrorCode::Degenerate, "inradius LP is unbounded");
    cheb_center_ = x0 + sol->segment<3>(0) - sol->segment<3>(3);
    inradius_ = (*sol)(6);
  }

  std::vector<Halfspace> halfspaces_;
  std::vector<Vec3> vertices_;
  std::vector<std::vector<std::size_t>> vertex_facets_;
  std::vector<std::vector<std::size_t>> facet_vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  double diameter_ = 0;
  double tol_ = 0;
  double inradius_ = 0;
  Vec3 cheb_center_ = Vec3::Zero();
};

// ---------------------------------------------------------------------------
// Queries

struct SimplicityReport {
  bool simple = true;
  std::vector<std::size_t> offending;
};

inline SimplicityReport is_simple(const ConvexPolytope& p) {
  SimplicityReport r;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    if (p.vertex_facets()[v].size() != 3) {
      r.simple = false;
      r.offending.push_back(v);
    }
  }
  return r;
}

/// Cone of P at vertex v: unit directions of the incident edges in cyclic order.
inline SolidAngle solid_angle_at(const ConvexPolytope& p, std::size_t v) {
  const Vec3& apex = p.vertices()[v];
  std::vector<Vec3> dirs;
  for (const auto& e : p.edges()) {
    if (e.first == v) dirs.push_back((p.vertices()[e.second] - apex).normalized());
    if (e.second == v) dirs.push_back((p.vertices()[e.first] - apex).normalized());
  }
  Vec3 axis = Vec3::Zero();
  for (const auto& d : dirs) axis += d;
  axis.normalize();
  const Vec3 u = any_orthogonal(axis);
  const Vec3 w = axis.cross(u);
  std::sort(dirs.begin(), dirs.end(), [&](const Vec3& a, const Vec3& b) {
    return std::atan2(w.dot(a), u.dot(a)) < std::atan2(w.dot(b), u.dot(b));
  });
  return SolidAngle(apex, dirs);
}

struct BoundaryDistance {
  double distance = 0;
  /// Negative inside the body, positive outside.
  double signed_distance = 0;
  Feature feature;
  /// Unit gradient of the signed distance (a facet normal inside the body).
  Vec3 gradient = Vec3::Zero();
};

/// Distance from x to the boundary surface of P, with the nearest feature.
inline BoundaryDistance distance_to_boundary(const ConvexPolytope& p, const Vec3& x) {
  BoundaryDistance out;
  const auto& hs = p.halfspaces();
  if (p.contains(x)) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t f = 0; f < hs.size(); ++f) {
      const double depth = -hs[f].violation(x);
      if (depth < best) {
        best = depth;
        arg = f;
      }
    }
    out.distance = best + 0.0;
    out.signed_distance = -best;
    out.feature = {FeatureKind::Facet, arg};
    out.gradient = hs[arg].normal;
    return out;
  }
  const Projection proj = p.project(x);
  out.distance = proj.distance;
  out.signed_distance = proj.distance;
  out.gradient = proj.distance > 0 ? Vec3((x - proj.point) / proj.distance) : Vec3::Zero();
  if (proj.active.size() <= 1) {
    out.feature = {FeatureKind::Facet, proj.active.empty() ? 0 : proj.active.front()};
  } else {
    // Vertices lying on every active facet: one means a vertex, two an edge.
    std::vector<std::size_t> common;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      const auto& vf = p.vertex_facets()[v];
      bool all = true;
      for (std::size_t f : proj.active)
        if (std::find(vf.begin(), vf.end(), f) == vf.end()) all = false;
      if (all) common.push_back(v);
    }
    if (common.size() == 2) {
      out.feature = {FeatureKind::Edge, p.edge_index(common[0], common[1]).value_or(0)};
    } else {
      std::size_t nearest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < p.vertices().size(); ++v) {
        const double d = (p.vertices()[v] - proj.point).norm();
        if (d < best) {
          best = d;
          nearest = v;
        }
      }
      out.feature = {FeatureKind::Vertex, nearest};
    }
  }
  return out;
}

/// P_eps, represented by the inner parallel body at depth eps.
class SmoothedBody {
 public:
  SmoothedBody(ConvexPolytope base, double epsilon) : base_(std::move(base)), epsilon_(epsilon) {
    if (!(epsilon_ > 0)) throw GeometryError(ErrorCode::InvalidEpsilon, "epsilon must be positive");
    if (!(epsilon_ < base_.inradius())) {
      throw GeometryError(ErrorCode::InvalidEpsilon, "epsilon must be below the inradius " + std::to_string(base_.inradius()));
    }
    std::vector<Halfspace> shifted = base_.halfspaces();
    for (auto& h : shifted) h.offset -= epsilon_;
    try {
      inner_ = ConvexPolytope::from_halfspaces(shifted);
    } catch (const GeometryError& err) {
      throw GeometryError(ErrorCode::InvalidEpsilon, std::string("inner body is degenerate: ") + err.what());
    }
  }

  const ConvexPolytope& base() const { return base_; }
  const ConvexPolytope& inner() const { return *inner_; }
  double epsilon() const { return epsilon_; }

 private:
  ConvexPolytope base_;
  double epsilon_;
  std::optional<ConvexPolytope> inner_;
};

struct SmoothDistance {
  double value = 0;
  Vec3 gradient = Vec3::Zero();
};

/// r(x) = dist(x, inner body) - eps; its zero set is the boundary of P_eps.
/// The gradient is zero inside the inner body, where r is constant.
inline SmoothDistance signed_distance_smoothed(const SmoothedBody& s, const Vec3& x) {
  const Projection proj = s.inner().project(x);
  SmoothDistance out;
  out.value = proj.distance - s.epsilon();
  if (proj.distance > 0) out.gradient = (x - proj.point) / proj.distance;
  return out;
}

/// True signed distance to the boundary of P_eps: agrees with
/// signed_distance_smoothed outside the inner body and keeps decreasing
/// (with a facet-normal gradient) inside it.
inline SmoothDistance signed_distance_to_smoothed_boundary(const SmoothedBody& s, const Vec3& x) {
  const auto& inner = s.inner();
  if (inner.contains(x)) {
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t f = 0; f < inner.halfspaces().size(); ++f) {
      const double v = inner.halfspaces()[f].violation(x);
      if (v > worst) {
        worst = v;
        arg = f;
      }
    }
    return {worst - s.epsilon(), inner.halfspaces()[arg].normal};
  }
  return signed_distance_smoothed(s, x);
}

}  // namespace octa
