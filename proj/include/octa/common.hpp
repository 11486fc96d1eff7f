#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace octa {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

inline constexpr double kPi = std::numbers::pi;

/// Default half-width of every angular tolerance band, in radians.
inline constexpr double kAngleTol = 1e-9;

enum class ErrorCode {
  DegenerateTriangle,
  InvalidPolygon,
  OutOfRange,
  NotTrihedral,
  InvalidSolidAngle,
  ConstructionFailed,
  NotNonSpecial,
  PathVerificationFailed,
  Degenerate,
  Inconsistent,
  InvalidEpsilon,
  NoSolutionFound,
  InscriptionFailed,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotTrihedral: return "NotTrihedral";
    case ErrorCode::InvalidSolidAngle: return "InvalidSolidAngle";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::NotNonSpecial: return "NotNonSpecial";
    case ErrorCode::PathVerificationFailed: return "PathVerificationFailed";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::NoSolutionFound: return "NoSolutionFound";
    case ErrorCode::InscriptionFailed: return "InscriptionFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Skew-symmetric cross-product matrix: skew(a) * b == a.cross(b).
inline Mat3 skew(const Vec3& a) {
  Mat3 m;
  m << 0, -a.z(), a.y(), a.z(), 0, -a.x(), -a.y(), a.x(), 0;
  return m;
}

/// Rotation by the rotation vector `w` (axis * angle).
inline Mat3 exp_so3(const Vec3& w) {
  const double angle = w.norm();
  if (angle < 1e-300) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

/// Any unit vector orthogonal to `v` (v need not be unit).
inline Vec3 any_orthogonal(const Vec3& v) {
  const Vec3 trial = std::abs(v.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return v.cross(trial).normalized();
}

// Counter-based random stream (splitmix64). Reproducible for a given
// (seed, stream) pair regardless of which thread consumes it.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(seed * 0x9E3779B97F4A7C15ULL + stream * 0xD1B54A32D192ED03ULL + 0x632BE59BD9B4E019ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  Vec3 unit_vector() {
    Vec3 v;
    do {
      v = Vec3(normal(), normal(), normal());
    } while (v.norm() < 1e-12);
    return v.normalized();
  }

  /// Uniformly distributed rotation (Shoemake).
  Quat rotation() { return quat_from_unit_cube(uniform(), uniform(), uniform()); }

  /// Shoemake's map from the unit cube to uniformly distributed unit quaternions.
  static Quat quat_from_unit_cube(double u1, double u2, double u3) {
    const double a = std::sqrt(1.0 - u1);
    const double b = std::sqrt(u1);
    return Quat(b * std::cos(2 * kPi * u3), a * std::sin(2 * kPi * u2), a * std::cos(2 * kPi * u2),
                b * std::sin(2 * kPi * u3));
  }

 private:
  std::uint64_t state_;
};

/// Radical inverse of `index` in `base` (Halton component).
inline double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

/// Deterministic low-discrepancy rotation set over SO(3). Element 0 is the identity.
inline std::vector<Quat> halton_rotations(std::size_t count) {
  std::vector<Quat> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(Quat::Identity());
  for (std::uint64_t i = 1; out.size() < count; ++i) {
    out.push_back(SplitMix::quat_from_unit_cube(radical_inverse(i, 2), radical_inverse(i, 3),
                                                radical_inverse(i, 5)));
  }
  return out;
}

}  // namespace octa
