#pragma once

// Regular octahedra inscribed in the boundary of a convex polytope: solve on
// the smoothed body P_eps, follow the solution as eps halves, and polish the
// limit against the polytope itself.

#include "octa/angles.hpp"
#include "octa/octahedron.hpp"
#include "octa/polytope.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace octa {

using Residual6 = Eigen::Matrix<double, 6, 1>;
using Jacobian67 = Eigen::Matrix<double, 6, 7>;

struct ResidualEval {
  Residual6 values = Residual6::Zero();
  /// Columns: center (3), rotation tangent exp(w) R (3), scale (1).
  Jacobian67 jacobian = Jacobian67::Zero();
};

struct SolveReport {
  OctahedronPose pose;
  std::array<double, 6> residuals{};
  int iterations = 0;
  bool converged = false;
  /// 0 for a report against the polytope boundary itself.
  double epsilon = 0;
  double tolerance = 0;
  std::vector<std::string> warnings;

  double max_residual() const {
    double m = 0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
  }
};

struct ContinuationTrace {
  std::vector<std::pair<double, SolveReport>> steps;
  std::vector<double> diameter_history;
};

struct SolverConfig {
  /// Convergence threshold on max |residual|, relative to the diameter.
  double tol_res_rel = 1e-10;
  int max_iter = 200;
};

struct MultistartConfig {
  SolverConfig solver;
  std::size_t rotations = 60;
  std::size_t scales = 5;
  double min_scale_rel = 0.01;
  double max_scale_rel = 0.5;
  /// Per-vertex seed centers sit this fraction of the way toward the centroid.
  double vertex_center_pull = 0.3;
  /// Skip Halton rotations; rotation 0 stays the identity when 0.
  std::uint64_t seed = 0;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
  /// Also quotient by the body's own isometries.
  bool quotient_body_symmetry = true;
  double dedup_rel = 1e-6;
};

// ---------------------------------------------------------------------------
// Residuals

namespace detail {

template <class DistanceFn>
ResidualEval evaluate_pose(const OctahedronPose& pose, DistanceFn&& dist) {
  ResidualEval out;
  const auto verts = pose.vertices();
  for (int j = 0; j < 6; ++j) {
    const Vec3& x = verts[static_cast<std::size_t>(j)];
    const auto d = dist(x);
    const Vec3 w = x - pose.center;
    out.values(j) = d.value;
    out.jacobian.block<1, 3>(j, 0) = d.gradient.transpose();
    out.jacobian.block<1, 3>(j, 3) = -(d.gradient.transpose() * skew(w));
    out.jacobian(j, 6) = d.gradient.dot(w) / pose.scale;
  }
  return out;
}

inline OctahedronPose apply_step(const OctahedronPose& pose, const Eigen::Matrix<double, 7, 1>& step) {
  OctahedronPose out = pose;
  out.center += step.head<3>();
  out.rotation = Quat(exp_so3(step.segment<3>(3)) * pose.rotation_matrix()).normalized();
  out.scale += step(6);
  return out;
}

struct LmOutcome {
  OctahedronPose pose;
  ResidualEval eval;
  int iterations = 0;
  bool rank_deficient = false;
};

// Damped minimum-norm Gauss-Newton on an underdetermined (or square) system.
template <class EvalFn>
LmOutcome levenberg_marquardt(const OctahedronPose& seed, EvalFn&& eval, double tol, int max_iter) {
  LmOutcome out;
  out.pose = seed;
  out.eval = eval(seed);
  double lambda = 1e-6;
  for (int it = 0; it < max_iter; ++it) {
    if (out.eval.values.lpNorm<Eigen::Infinity>() <= tol) break;
    out.iterations = it + 1;
    const auto& jac = out.eval.jacobian;
    const Eigen::Matrix<double, 6, 6> jjt = jac * jac.transpose();
    const double diag_scale = std::max(jjt.diagonal().maxCoeff(), 1e-300);
    bool improved = false;
    for (int tries = 0; tries < 16 && !improved; ++tries) {
      const Eigen::Matrix<double, 6, 6> lhs = jjt + lambda * diag_scale * Eigen::Matrix<double, 6, 6>::Identity();
      const Residual6 y = lhs.ldlt().solve(out.eval.values);
      Eigen::Matrix<double, 7, 1> step = -jac.transpose() * y;
      // Keep the scale positive and the step modest relative to it.
      const double limit = 0.5 * out.pose.scale;
      if (std::abs(step(6)) > limit) step *= limit / std::abs(step(6));
      const OctahedronPose trial = apply_step(out.pose, step);
      if (!(trial.scale > 0)) {
        lambda *= 10;
        continue;
      }
      const ResidualEval te = eval(trial);
      if (te.values.squaredNorm() < out.eval.values.squaredNorm()) {
        out.pose = trial;
        out.eval = te;
        lambda = std::max(lambda * 0.2, 1e-15);
        improved = true;
      } else {
        lambda *= 10;
      }
    }
    if (!improved) break;
  }
  Eigen::JacobiSVD<Jacobian67> svd(out.eval.jacobian);
  const auto sv = svd.singularValues();
  out.rank_deficient = sv(5) <= 1e-10 * std::max(sv(0), 1e-300);
  return out;
}

}  // namespace detail

/// Signed distances of the six vertices to the boundary of P_eps.
inline ResidualEval residual(const SmoothedBody& s, const OctahedronPose& pose) {
  return detail::evaluate_pose(pose, [&](const Vec3& x) { return signed_distance_smoothed(s, x); });
}

/// Signed distances of the six vertices to the boundary of P itself.
inline ResidualEval boundary_residual(const ConvexPolytope& p, const OctahedronPose& pose) {
  return detail::evaluate_pose(pose, [&](const Vec3& x) {
    const auto d = distance_to_boundary(p, x);
    return SmoothDistance{d.signed_distance, d.gradient};
  });
}

/// Levenberg-Marquardt from `seed` onto the solution set of the smoothed
/// problem. Never retries; a failed solve returns the best iterate with
/// converged = false.
inline SolveReport solve_at_epsilon(const SmoothedBody& s, const OctahedronPose& seed, const SolverConfig& cfg = {}) {
  const double tol = cfg.tol_res_rel * s.base().diameter();
  // Iterate on the signed distance to the smoothed boundary, which equals the
  // residual wherever it is near zero but keeps a gradient deep inside.
  auto guide = [&](const OctahedronPose& pose) {
    return detail::evaluate_pose(pose, [&](const Vec3& x) { return signed_distance_to_smoothed_boundary(s, x); });
  };
  const auto lm = detail::levenberg_marquardt(seed, guide, tol, cfg.max_iter);
  SolveReport rep;
  rep.pose = lm.pose;
  rep.iterations = lm.iterations;
  rep.epsilon = s.epsilon();
  rep.tolerance = tol;
  const ResidualEval check = residual(s, lm.pose);
  for (int j = 0; j < 6; ++j) rep.residuals[static_cast<std::size_t>(j)] = check.values(j);
  rep.converged = rep.max_residual() <= tol && lm.pose.scale > 0;
  if (rep.converged && lm.rank_deficient) rep.warnings.push_back("rank-deficient Jacobian at solution");
  return rep;
}

// ---------------------------------------------------------------------------
// Symmetry and deduplication

/// Isometries fixing the vertex centroid that map the vertex set to itself.
inline std::vector<Mat3> symmetry_group(const ConvexPolytope& p) {
  const Vec3 c = p.vertex_centroid();
  std::vector<Vec3> rel;
  for (const auto& v : p.vertices()) rel.push_back(v - c);
  const double tol = 1e-7 * p.diameter();
  std::size_t i0 = 0, i1 = 1;
  double best = -1;
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = i + 1; j < rel.size(); ++j) {
      const double cr = rel[i].cross(rel[j]).norm();
      if (cr > best) {
        best = cr;
        i0 = i;
        i1 = j;
      }
    }
  Mat3 src;
  src.col(0) = rel[i0];
  src.col(1) = rel[i1];
  src.col(2) = rel[i0].cross(rel[i1]);
  const Mat3 src_inv = src.inverse();
  std::vector<Mat3> group;
  for (std::size_t a = 0; a < rel.size(); ++a) {
    if (std::abs(rel[a].norm() - rel[i0].norm()) > tol) continue;
    for (std::size_t b = 0; b < rel.size(); ++b) {
      if (b == a || std::abs(rel[b].norm() - rel[i1].norm()) > tol) continue;
      if (std::abs(rel[a].dot(rel[b]) - rel[i0].dot(rel[i1])) > tol * p.diameter()) continue;
      for (double sign : {1.0, -1.0}) {
        Mat3 dst;
        dst.col(0) = rel[a];
        dst.col(1) = rel[b];
        dst.col(2) = sign * rel[a].cross(rel[b]);
        const Mat3 q = dst * src_inv;
        if ((q.transpose() * q - Mat3::Identity()).norm() > 1e-6) continue;
        bool maps = true;
        for (const auto& v : rel) {
          double nearest = std::numeric_limits<double>::infinity();
          for (const auto& w : rel) nearest = std::min(nearest, (q * v - w).norm());
          if (nearest > tol) {
            maps = false;
            break;
          }
        }
        if (maps) group.push_back(q);
      }
    }
  }
  return group;
}

/// True when `a` and `b` coincide up to the octahedron's symmetry and,
/// optionally, one of the body isometries in `group`.
inline bool equivalent_poses(const OctahedronPose& a, const OctahedronPose& b, double tol,
                             const std::vector<Mat3>& group, const Vec3& centroid) {
  if (same_octahedron(a, b, tol)) return true;
  for (const auto& q : group) {
    if (same_octahedron(transformed(a, q, centroid - q * centroid), b, tol)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Multistart

struct Seed {
  OctahedronPose pose;
  std::size_t index = 0;
};

/// Seeds in canonical order: centers (vertex centroid first, then per-vertex
/// inward offsets), rotations (identity first), scales from large to small.
inline std::vector<Seed> multistart_seeds(const ConvexPolytope& p, const MultistartConfig& cfg) {
  std::vector<Vec3> centers{p.vertex_centroid()};
  for (const auto& v : p.vertices()) centers.push_back(v + cfg.vertex_center_pull * (p.vertex_centroid() - v));
  std::vector<Quat> rots;
  if (cfg.rotations > 0) {
    // A nonzero seed shifts the Halton stream; the identity always stays first.
    const auto stream = halton_rotations(cfg.rotations + cfg.seed);
    rots.push_back(stream.front());
    for (std::size_t i = 1 + cfg.seed; i < stream.size(); ++i) rots.push_back(stream[i]);
  }
  std::vector<double> scales;
  for (std::size_t k = 0; k < cfg.scales; ++k) {
    const double t = cfg.scales == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(cfg.scales - 1);
    scales.push_back(p.diameter() * cfg.max_scale_rel * std::pow(cfg.min_scale_rel / cfg.max_scale_rel, t));
  }
  std::vector<Seed> seeds;
  for (const auto& c : centers)
    for (const auto& q : rots)
      for (double s : scales) {
        Seed seed;
        seed.pose.center = c;
        seed.pose.rotation = q;
        seed.pose.scale = s;
        seed.index = seeds.size();
        seeds.push_back(seed);
      }
  return seeds;
}

namespace detail {

// Runs `fn(i)` for i in [0, n) on worker threads; results are written by index.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Deduplicated converged solutions, sorted by residual and then by pose.
inline std::vector<SolveReport> multistart(const SmoothedBody& s, const MultistartConfig& cfg = {}) {
  const auto seeds = multistart_seeds(s.base(), cfg);
  if (seeds.empty()) throw GeometryError(ErrorCode::NoSolutionFound, "no seeds configured");
  std::vector<SolveReport> reports(seeds.size());
  detail::parallel_for(seeds.size(), cfg.threads,
                       [&](std::size_t i) { reports[i] = solve_at_epsilon(s, seeds[i].pose, cfg.solver); });

  const std::vector<Mat3> group = cfg.quotient_body_symmetry ? symmetry_group(s.base()) : std::vector<Mat3>{};
  const Vec3 centroid = s.base().vertex_centroid();
  const double tol = cfg.dedup_rel * s.base().diameter();
  std::vector<SolveReport> converged;
  for (auto& rep : reports)
    if (rep.converged) converged.push_back(std::move(rep));
  // Canonical order, independent of which worker finished first.
  auto key = [](const SolveReport& r) {
    const Vec3& c = r.pose.center;
    const Eigen::Vector4d q = r.pose.rotation.coeffs();
    return std::array<double, 9>{r.max_residual(), c.x(), c.y(), c.z(), r.pose.scale, q(0), q(1), q(2), q(3)};
  };
  std::stable_sort(converged.begin(), converged.end(),
                   [&](const SolveReport& a, const SolveReport& b) { return key(a) < key(b); });
  std::vector<SolveReport> out;
  for (auto& rep : converged) {
    bool duplicate = false;
    for (const auto& kept : out) {
      if (equivalent_poses(rep.pose, kept.pose, tol, group, centroid)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(std::move(rep));
  }
  if (out.empty()) throw GeometryError(ErrorCode::NoSolutionFound, "no seed converged");
  return out;
}

// ---------------------------------------------------------------------------
// Certification

struct VertexCertificate {
  Vec3 position;
  double distance = 0;
  Feature feature;
};

struct CertifyReport {
  bool certified = false;
  double max_distance = 0;
  /// Largest deviation of an edge length from the mean edge length.
  double regularity_error = 0;
  std::array<VertexCertificate, 6> vertices{};
};

inline CertifyReport certify(const ConvexPolytope& p, const OctahedronPose& pose, double tol) {
  CertifyReport out;
  const auto verts = pose.vertices();
  for (std::size_t j = 0; j < 6; ++j) {
    const auto d = distance_to_boundary(p, verts[j]);
    out.vertices[j] = {verts[j], d.distance, d.feature};
    out.max_distance = std::max(out.max_distance, d.distance);
  }
  double mean = 0;
  for (const auto& [a, b] : octahedron_edges()) mean += (verts[static_cast<std::size_t>(a)] - verts[static_cast<std::size_t>(b)]).norm();
  mean /= 12.0;
  for (const auto& [a, b] : octahedron_edges()) {
    out.regularity_error = std::max(out.regularity_error, std::abs((verts[static_cast<std::size_t>(a)] - verts[static_cast<std::size_t>(b)]).norm() - mean));
  }
  out.certified = out.max_distance <= tol && out.regularity_error <= 1e-12 * std::max(pose.scale, 1.0) * 16;
  return out;
}

// ---------------------------------------------------------------------------
// Continuation

struct InscribeConfig {
  MultistartConfig multistart;
  /// Starting smoothing radius; 0 means 0.2 * inradius.
  double eps0 = 0;
  /// Below this (relative to the diameter) the smoothing is dropped.
  double switch_rel = 1e-6;
  double collapse_rel = 1e-3;
  double exclusion_rel = 0.05;
  /// Certification tolerance relative to the diameter.
  double certify_rel = 1e-8;
  /// Upper bound on tracked starting solutions.
  std::size_t max_tracks = 200;
  int max_bisections = 6;
};

enum class InscribeEvent { VertexCollapse, CollapseRescaled, SpecialVertexConstruction };

inline const char* to_string(InscribeEvent e) {
  switch (e) {
    case InscribeEvent::VertexCollapse: return "VERTEX_COLLAPSE";
    case InscribeEvent::CollapseRescaled: return "COLLAPSE_RESCALED";
    case InscribeEvent::SpecialVertexConstruction: return "SPECIAL_VERTEX_CONSTRUCTION";
  }
  return "?";
}

struct InscribeResult {
  ContinuationTrace trace;
  SolveReport final_report;
  CertifyReport certificate;
  std::vector<std::string> warnings;
  std::vector<std::pair<InscribeEvent, std::size_t>> events;
  std::size_t tracks_tried = 0;
};

namespace detail {

inline std::size_t nearest_vertex(const ConvexPolytope& p, const Vec3& x) {
  std::size_t arg = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const double d = (p.vertices()[v] - x).norm();
    if (d < best) {
      best = d;
      arg = v;
    }
  }
  return arg;
}

// Gauss-Newton on "vertex j lies on every facet plane in features[j]".
inline std::optional<OctahedronPose> polish_on_planes(const ConvexPolytope& p, const OctahedronPose& seed,
                                                      const std::array<std::vector<std::size_t>, 6>& features) {
  OctahedronPose pose = seed;
  const auto& hs = p.halfspaces();
  std::size_t rows = 0;
  for (const auto& f : features) rows += f.size();
  if (rows < 6) return std::nullopt;
  for (int it = 0; it < 60; ++it) {
    const auto verts = pose.vertices();
    Eigen::VectorXd r(static_cast<Eigen::Index>(rows));
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(rows), 7);
    Eigen::Index row = 0;
    for (std::size_t j = 0; j < 6; ++j) {
      const Vec3 w = verts[j] - pose.center;
      for (std::size_t f : features[j]) {
        const Vec3& n = hs[f].normal;
        r(row) = hs[f].violation(verts[j]);
        jac.block<1, 3>(row, 0) = n.transpose();
        jac.block<1, 3>(row, 3) = -(n.transpose() * skew(w));
        jac(row, 6) = n.dot(w) / pose.scale;
        ++row;
      }
    }
    if (r.lpNorm<Eigen::Infinity>() <= 1e-14 * p.diameter()) return pose;
    const Eigen::Matrix<double, 7, 1> step = -jac.completeOrthogonalDecomposition().solve(r);
    pose = apply_step(pose, step);
    if (!(pose.scale > 0)) return std::nullopt;
    if (step.norm() <= 1e-16 * p.diameter()) break;
  }
  return pose;
}

inline SolveReport boundary_report(const ConvexPolytope& p, const OctahedronPose& pose, double tol) {
  SolveReport rep;
  rep.pose = pose;
  rep.epsilon = 0;
  rep.tolerance = tol;
  const auto eval = boundary_residual(p, pose);
  for (int j = 0; j < 6; ++j) rep.residuals[static_cast<std::size_t>(j)] = eval.values(j);
  rep.converged = rep.max_residual() <= tol;
  return rep;
}

// Drops the smoothing: snaps each vertex onto the facets whose inner copies
// were active in the last smoothed solution, then certifies against P.
inline std::optional<SolveReport> polish_exact(const ConvexPolytope& p, const SmoothedBody& last,
                                               const OctahedronPose& pose, double tol) {
  const auto verts = pose.vertices();
  std::vector<std::array<std::vector<std::size_t>, 6>> patterns(2);
  for (std::size_t j = 0; j < 6; ++j) {
    const auto proj = last.inner().project(verts[j]);
    // Inner-body facets keep the indices of the base halfspaces that survived
    // pruning; match them back by normal.
    for (std::size_t f : proj.active) {
      const Vec3& n = last.inner().halfspaces()[f].normal;
      for (std::size_t g = 0; g < p.halfspaces().size(); ++g)
        if ((p.halfspaces()[g].normal - n).norm() < 1e-9) patterns[0][j].push_back(g);
    }
    patterns[1][j] = {distance_to_boundary(p, verts[j]).feature.index};
    const auto d = distance_to_boundary(p, verts[j]);
    if (d.feature.kind != FeatureKind::Facet) patterns[1][j] = patterns[0][j];
  }
  for (const auto& pattern : patterns) {
    const auto polished = polish_on_planes(p, pose, pattern);
    if (!polished) continue;
    const SolveReport rep = boundary_report(p, *polished, tol);
    if (rep.converged) return rep;
  }
  // Nonsmooth fallback: iterate directly on the signed distance to P.
  auto eval = [&](const OctahedronPose& q) { return boundary_residual(p, q); };
  const auto lm = levenberg_marquardt(pose, eval, tol, 200);
  const SolveReport rep = boundary_report(p, lm.pose, tol);
  if (rep.converged) return rep;
  return std::nullopt;
}

enum class TrackStatus { Certified, Collapsed, Lost };

struct TrackOutcome {
  TrackStatus status = TrackStatus::Lost;
  ContinuationTrace trace;
  std::optional<SolveReport> final_report;
  OctahedronPose last_pose;
  double last_epsilon = 0;
};

inline TrackOutcome track(const ConvexPolytope& p, const SolveReport& start, const InscribeConfig& cfg) {
  TrackOutcome out;
  const double diam = p.diameter();
  const double final_tol = cfg.multistart.solver.tol_res_rel * diam;
  out.trace.steps.emplace_back(start.epsilon, start);
  out.trace.diameter_history.push_back(start.pose.diameter());
  OctahedronPose pose = start.pose;
  double eps = start.epsilon;
  std::optional<SmoothedBody> last_body;
  last_body.emplace(p, eps);
  while (eps > cfg.switch_rel * diam) {
    double next = 0.5 * eps;
    std::optional<SolveReport> rep;
    for (int b = 0; b <= cfg.max_bisections; ++b) {
      SmoothedBody body(p, next);
      SolveReport r = solve_at_epsilon(body, pose, cfg.multistart.solver);
      if (r.converged) {
        rep = std::move(r);
        last_body.emplace(std::move(body));
        break;
      }
      next = std::sqrt(eps * next);
    }
    if (!rep) {
      out.status = TrackStatus::Lost;
      return out;
    }
    eps = next;
    pose = rep->pose;
    out.trace.steps.emplace_back(eps, *rep);
    out.trace.diameter_history.push_back(pose.diameter());
    out.last_pose = pose;
    out.last_epsilon = eps;
    if (pose.diameter() < cfg.collapse_rel * diam) {
      out.status = TrackStatus::Collapsed;
      return out;
    }
  }
  out.last_pose = pose;
  out.last_epsilon = eps;
  auto polished = polish_exact(p, *last_body, pose, final_tol);
  if (!polished) {
    out.status = TrackStatus::Lost;
    return out;
  }
  const CertifyReport cert = certify(p, polished->pose, cfg.certify_rel * diam);
  out.status = cert.certified ? TrackStatus::Certified : TrackStatus::Lost;
  out.final_report = std::move(polished);
  return out;
}

// Scales an octahedron that collapsed onto vertex v back up about v, where P
// looks like its vertex cone, keeping it inscribed in a proportionally
// larger smoothing.
inline std::optional<SolveReport> rescale_about_vertex(const ConvexPolytope& p, std::size_t v,
                                                       const OctahedronPose& pose, double eps,
                                                       const InscribeConfig& cfg) {
  const Vec3& apex = p.vertices()[v];
  double shortest = std::numeric_limits<double>::infinity();
  for (const auto& e : p.edges()) {
    if (e.first == v || e.second == v) {
      shortest = std::min(shortest, (p.vertices()[e.first] - p.vertices()[e.second]).norm());
    }
  }
  double reach = 0;
  for (const auto& x : pose.vertices()) reach = std::max(reach, (x - apex).norm());
  if (!(reach > 0)) return std::nullopt;
  const double k = 0.25 * shortest / reach;
  const double new_eps = k * eps;
  if (!(k > 1) || !(new_eps < 0.5 * p.inradius())) return std::nullopt;
  OctahedronPose scaled = pose;
  scaled.center = apex + k * (pose.center - apex);
  scaled.scale = k * pose.scale;
  const SolveReport rep = solve_at_epsilon(SmoothedBody(p, new_eps), scaled, cfg.multistart.solver);
  if (!rep.converged) return std::nullopt;
  return rep;
}

}  // namespace detail

/// Polytope-level precondition warnings for inscription.
inline std::vector<std::string> inscription_warnings(const ConvexPolytope& p) {
  std::vector<std::string> warnings;
  const auto simple = is_simple(p);
  if (simple.simple) return warnings;
  warnings.push_back("polytope is not simple (" + std::to_string(simple.offending.size()) + " vertices)");
  for (std::size_t v : simple.offending) {
    const auto cls = classify_general(solid_angle_at(p, v));
    if (cls.tag != GeneralTag::InA0) {
      warnings.push_back("existence not guaranteed: the cone at vertex " + std::to_string(v) +
                         " has more than 3 facets and may fit inside the regular pi/3 triangle");
      break;
    }
  }
  return warnings;
}

/// A small octahedron inscribed at a special simple vertex, if there is one.
inline std::optional<SolveReport> inscribe_at_special_vertex(const ConvexPolytope& p, double tol, std::size_t* vertex = nullptr) {
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    if (p.vertex_facets()[v].size() != 3) continue;
    const SolidAngle angle = solid_angle_at(p, v);
    const AngleClass cls = classify_trihedral(angle);
    if (cls.tag != AngleTag::Special) continue;
    OctahedronPose pose;
    try {
      pose = construct_inscribed_octahedron(angle, *cls.certificate);
    } catch (const GeometryError&) {
      continue;
    }
    const Vec3& apex = p.vertices()[v];
    double reach = 0;
    for (const auto& x : pose.vertices()) reach = std::max(reach, (x - apex).norm());
    double k = p.diameter() / reach;
    for (int halving = 0; halving < 80; ++halving, k *= 0.5) {
      OctahedronPose scaled = pose;
      scaled.center = apex + k * (pose.center - apex);
      scaled.scale = k * pose.scale;
      if (certify(p, scaled, tol).certified) {
        if (vertex) *vertex = v;
        return detail::boundary_report(p, scaled, tol);
      }
    }
  }
  return std::nullopt;
}

/// Finds a regular octahedron inscribed in the boundary of P by following
/// solutions on P_eps as eps -> 0 and polishing against P.
inline InscribeResult continue_to_surface(const ConvexPolytope& p, const InscribeConfig& cfg = {}) {
  InscribeResult result;
  result.warnings = inscription_warnings(p);
  const double diam = p.diameter();
  const double eps0 = cfg.eps0 > 0 ? cfg.eps0 : 0.2 * p.inradius();
  const SmoothedBody start_body(p, eps0);
  const auto seeds = multistart_seeds(p, cfg.multistart);
  const double dedup = cfg.multistart.dedup_rel * diam;
  bool exclude_vertices = false;
  std::vector<OctahedronPose> tried;

  for (const auto& seed : seeds) {
    if (result.tracks_tried >= cfg.max_tracks) break;
    const SolveReport start = solve_at_epsilon(start_body, seed.pose, cfg.multistart.solver);
    if (!start.converged) continue;
    if (exclude_vertices) {
      const std::size_t v = detail::nearest_vertex(p, start.pose.center);
      if ((p.vertices()[v] - start.pose.center).norm() < cfg.exclusion_rel * diam) continue;
    }
    bool seen = false;
    for (const auto& t : tried) seen = seen || same_octahedron(t, start.pose, dedup);
    if (seen) continue;
    tried.push_back(start.pose);
    ++result.tracks_tried;

    detail::TrackOutcome out = detail::track(p, start, cfg);
    if (out.status == detail::TrackStatus::Collapsed) {
      const std::size_t v = detail::nearest_vertex(p, out.last_pose.center);
      result.events.emplace_back(InscribeEvent::VertexCollapse, v);
      exclude_vertices = true;
      if (auto restart = detail::rescale_about_vertex(p, v, out.last_pose, out.last_epsilon, cfg)) {
        result.events.emplace_back(InscribeEvent::CollapseRescaled, v);
        out = detail::track(p, *restart, cfg);
      }
    }
    if (out.status == detail::TrackStatus::Certified) {
      result.trace = std::move(out.trace);
      result.final_report = std::move(*out.final_report);
      result.certificate = certify(p, result.final_report.pose, cfg.certify_rel * diam);
      return result;
    }
  }

  std::size_t v = 0;
  if (auto rep = inscribe_at_special_vertex(p, cfg.certify_rel * diam, &v)) {
    result.events.emplace_back(InscribeEvent::SpecialVertexConstruction, v);
    result.final_report = *rep;
    result.certificate = certify(p, rep->pose, cfg.certify_rel * diam);
    return result;
  }
  throw GeometryError(ErrorCode::InscriptionFailed,
                      "no certified octahedron after " + std::to_string(result.tracks_tried) +
                          " tracked solutions (a numerical failure, not a counterexample)");
}

}  // namespace octa
