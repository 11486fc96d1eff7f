#include "octa/angles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

using namespace octa;
using octa::testing::random_rotation;
using octa::testing::random_triangle;

namespace {

SolidAngle cube_corner() { return SolidAngle(Vec3::Zero(), {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}); }

SolidAngle equilateral_angle(double side) { return solid_angle_from_triangle(triangle_from_sides(side, side, side)); }

SphTriangle remark_triangle() { return triangle_from_sides(kPi / 3, kPi / 3, kPi / 3 - 0.01); }

std::array<double, 3> sorted_sides(const SphTriangle& t) {
  std::array<double, 3> s{t.side(0), t.side(1), t.side(2)};
  std::sort(s.begin(), s.end());
  return s;
}

// Distance of x from the boundary of the cone, or +inf when outside it.
double cone_boundary_distance(const SolidAngle& angle, const Vec3& x, double tol) {
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < angle.size(); ++i) {
    const double d = angle.facet_normal(i).dot(x - angle.apex());
    if (d < -tol) return std::numeric_limits<double>::infinity();
    nearest = std::min(nearest, std::abs(d));
  }
  return nearest;
}

void expect_inscribed_in_cone(const SolidAngle& angle, const OctahedronPose& pose, double rel_tol) {
  const double tol = rel_tol * pose.scale;
  for (const auto& v : pose.vertices()) EXPECT_LE(cone_boundary_distance(angle, v, tol), tol);
  const auto verts = pose.vertices();
  for (const auto& [a, b] : octahedron_edges()) {
    EXPECT_NEAR((verts[static_cast<std::size_t>(a)] - verts[static_cast<std::size_t>(b)]).norm(),
                std::sqrt(2.0) * pose.scale, 1e-12 * pose.scale);
  }
}

}  // namespace

TEST(T0, Constants) {
  const SphTriangle t0 = t0_triangle();
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(t0.side(i), kPi / 3, 1e-12);
    EXPECT_NEAR(vertex_angle(t0, i), std::acos(1.0 / 3.0), 1e-12);
  }
  EXPECT_NEAR(t0.vertex(0).v().z(), 1.0, 1e-15);
  EXPECT_NEAR(area(t0), t0_area(), 1e-12);
  EXPECT_NEAR(t0_area(), 3 * std::acos(1.0 / 3.0) - kPi, 1e-15);
}

TEST(SolidAngle, RejectsInvalidCones) {
  EXPECT_THROW(SolidAngle(Vec3::Zero(), {Vec3::UnitX(), Vec3::UnitY()}), GeometryError);
  // Middle ray is a conic combination of its neighbours.
  EXPECT_THROW(SolidAngle(Vec3::Zero(), {Vec3(1, 0, 1), Vec3(1, 1, 2), Vec3(0, 1, 1), Vec3(0, 0, 1)}),
               GeometryError);
  // Nearly coplanar edges do not span a salient cone.
  EXPECT_THROW(SolidAngle(Vec3::Zero(), {Vec3(1, 0, 0), Vec3(-0.5, 0.866, 0), Vec3(-0.5, -0.866, 1e-14)}),
               GeometryError);
}

TEST(SolidAngle, FacetAnglesAndNormals) {
  const SolidAngle c = cube_corner();
  for (double a : c.facet_angles()) EXPECT_EQ(a, kPi / 2);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(c.facet_normal(i).dot(Vec3(1, 1, 1)), 1.0, 1e-15);
  }
}

TEST(SphericalTriangleOf, Examples) {
  const SphTriangle oct = spherical_triangle_of(cube_corner());
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(oct.side(i), kPi / 2, 1e-15);
  const auto tet = octa::testing::regular_tetrahedron();
  const SphTriangle corner = spherical_triangle_of(solid_angle_at(tet, 0));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(corner.side(i), kPi / 3, 1e-12);
  const SolidAngle quad(Vec3::Zero(), {Vec3(1, 0, 1), Vec3(0, 1, 1), Vec3(-1, 0, 1), Vec3(0, -1, 1)});
  EXPECT_THROW(spherical_triangle_of(quad), GeometryError);
}

TEST(NormalizeOrdering, Examples) {
  const SphTriangle ordered = triangle_from_sides(0.9, 0.6, 0.4);
  const SphTriangle same = normalize_ordering(ordered);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR((same.vertex(i).v() - ordered.vertex(i).v()).norm(), 0, 1e-15);

  // Sides in label order |v0v1| = 0.4, |v0v2| = 0.9, |v1v2| = 0.6.
  const SphTriangle scrambled = triangle_from_sides(0.4, 0.9, 0.6);
  const SphTriangle n = normalize_ordering(scrambled);
  EXPECT_NEAR(arc_distance(n.vertex(0), n.vertex(1)), 0.9, 1e-13);
  EXPECT_NEAR(arc_distance(n.vertex(0), n.vertex(2)), 0.6, 1e-13);
  EXPECT_NEAR(arc_distance(n.vertex(1), n.vertex(2)), 0.4, 1e-13);
  EXPECT_NEAR(area(n), area(scrambled), 1e-12);

  const SphTriangle eq = normalize_ordering(triangle_from_sides(0.5, 0.5, 0.5));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(eq.side(i), 0.5, 1e-13);
}

TEST(NormalizeOrdering, CongruentOnRandomTriangles) {
  SplitMix rng(3);
  for (int k = 0; k < 1000; ++k) {
    const SphTriangle t = random_triangle(rng, 0.05, 1.5);
    const SphTriangle n = normalize_ordering(t);
    const auto a = sorted_sides(t), b = sorted_sides(n);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)], 1e-12);
    EXPECT_NEAR(area(n), area(t), 1e-12);
    EXPECT_GE(arc_distance(n.vertex(0), n.vertex(1)), arc_distance(n.vertex(0), n.vertex(2)) - 1e-15);
    EXPECT_GE(arc_distance(n.vertex(0), n.vertex(2)), arc_distance(n.vertex(1), n.vertex(2)) - 1e-15);
  }
}

TEST(PlacementTest, Examples) {
  EXPECT_EQ(placement_test(triangle_from_sides(kPi / 8, kPi / 8, kPi / 8)).tag, AngleTag::Special);
  EXPECT_EQ(placement_test(triangle_from_sides(1.2, 0.7, 0.8)).tag, AngleTag::NonSpecial);
  EXPECT_EQ(placement_test(remark_triangle()).tag, AngleTag::NonSpecial);
  EXPECT_LT(placement_test(remark_triangle()).margin, -1e-3);
}

TEST(PlacementTest, ShrunkSideOfT0) {
  const auto& t = t0_vertices();
  const SpherePoint t3 = point_on_arc(SpherePoint(t[1]), SpherePoint(t[2]), kPi / 3 - 0.01);
  const SphTriangle shrunk{SpherePoint(t[0]), SpherePoint(t[1]), t3};
  const AngleClass c = placement_test(shrunk);
  EXPECT_NE(c.tag, AngleTag::Special);
  EXPECT_LE(c.margin, kAngleTol);
}

TEST(PlacementTest, SpecialCertificateInvariants) {
  SplitMix rng(41);
  int special = 0;
  for (int k = 0; k < 500; ++k) {
    const SphTriangle tri = random_triangle(rng, 0.1, 1.1);
    const AngleClass c = placement_test(tri);
    if (c.tag == AngleTag::Indeterminate) {
      EXPECT_LT(std::abs(c.margin), kAngleTol);
    }
    if (c.tag != AngleTag::Special) continue;
    ++special;
    ASSERT_TRUE(c.certificate.has_value());
    const auto& cert = *c.certificate;
    const auto& t = t0_vertices();
    EXPECT_LE(arc_distance(cert.placed[0], t[0]), 1e-10);
    EXPECT_LE(std::abs(signed_side_distance(t[0], t[1], cert.placed[1])), 1e-10);
    EXPECT_GE(cert.arc_slack, -1e-10);
    for (double m : cert.margins) EXPECT_GE(m, c.margin - 1e-15);
    // The placed triangle is congruent to the input.
    const SphTriangle placed{SpherePoint(cert.placed[0]), SpherePoint(cert.placed[1]), SpherePoint(cert.placed[2])};
    const auto a = sorted_sides(tri), b = sorted_sides(placed);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)], 1e-12);
  }
  EXPECT_GT(special, 50);
}

TEST(PlacementTest, CongruenceInvariant) {
  SplitMix rng(43);
  for (int k = 0; k < 1000; ++k) {
    const SphTriangle tri = random_triangle(rng, 0.1, 1.2);
    const AngleClass base = placement_test(tri);
    if (std::abs(base.margin) < 1e-7) continue;
    const SpherePoint& a = tri.vertex(0);
    const SpherePoint& b = tri.vertex(1);
    const SpherePoint& c = tri.vertex(2);
    const std::array<SphTriangle, 6> relabeled{SphTriangle(a, b, c), SphTriangle(b, c, a), SphTriangle(c, a, b),
                                               SphTriangle(b, a, c), SphTriangle(a, c, b), SphTriangle(c, b, a)};
    for (const auto& r : relabeled) {
      const AngleClass other = placement_test(r);
      EXPECT_EQ(other.tag, base.tag);
      EXPECT_NEAR(other.margin, base.margin, 1e-9);
    }
    Mat3 mirror = Mat3::Identity();
    mirror(0, 0) = -1;
    EXPECT_EQ(placement_test(transformed(tri, mirror * random_rotation(rng))).tag, base.tag);
    EXPECT_EQ(placement_test(normalize_ordering(tri)).tag, base.tag);
  }
}

TEST(PlacementTest, CorollaryThresholds) {
  SplitMix rng(47);
  for (int k = 0; k < 1000; ++k) {
    const SphTriangle small = random_triangle(rng, 0.01, kPi / 6 - 1e-3);
    EXPECT_EQ(placement_test(small).tag, AngleTag::Special);
  }
  for (int k = 0; k < 1000; ++k) {
    const double big = rng.uniform(kPi / 3 + 1e-3, 2.0);
    const double b = rng.uniform(0.1, 1.5), c = rng.uniform(0.1, 1.5);
    SphTriangle t = random_triangle(rng, 0.1, 0.2);
    try {
      t = triangle_from_sides(b, c, big);
    } catch (const GeometryError&) {
      continue;
    }
    EXPECT_EQ(placement_test(t).tag, AngleTag::NonSpecial);
  }
}

TEST(ClassifyTrihedral, Examples) {
  EXPECT_EQ(classify_trihedral(cube_corner()).tag, AngleTag::NonSpecial);
  const AngleClass small = classify_trihedral(equilateral_angle(0.3));
  EXPECT_EQ(small.tag, AngleTag::Special);
  EXPECT_TRUE(small.certificate.has_value());
  const auto tet = octa::testing::regular_tetrahedron();
  const AngleClass corner = classify_trihedral(solid_angle_at(tet, 0));
  EXPECT_EQ(corner.tag, AngleTag::Indeterminate);
  EXPECT_LT(std::abs(corner.margin), kAngleTol);
  EXPECT_THROW(classify_trihedral(SolidAngle(Vec3::Zero(), {Vec3(1, 0, 1), Vec3(0, 1, 1), Vec3(-1, 0, 1), Vec3(0, -1, 1)})),
               GeometryError);
}

TEST(ClassifyTrihedral, AgreesWithPlacementTest) {
  SplitMix rng(53);
  for (int k = 0; k < 1000; ++k) {
    const SphTriangle tri = random_triangle(rng, 0.05, 1.4);
    const AngleClass full = placement_test(tri);
    if (std::abs(full.margin) < 1e-7) continue;
    EXPECT_EQ(classify_trihedral(solid_angle_from_triangle(tri)).tag, full.tag);
  }
}

TEST(Construct, EquilateralPointThree) {
  const SolidAngle angle = equilateral_angle(0.3);
  const AngleClass c = classify_trihedral(angle);
  ASSERT_TRUE(c.certificate);
  const OctahedronPose pose = construct_inscribed_octahedron(angle, *c.certificate);
  expect_inscribed_in_cone(angle, pose, 1e-9);
}

TEST(Construct, ShiftedApexAndScale) {
  const SphTriangle tri = triangle_from_sides(0.5, 0.4, 0.3);
  const SolidAngle angle = solid_angle_from_triangle(tri, Vec3(2, -1, 5));
  const AngleClass c = classify_trihedral(angle);
  ASSERT_EQ(c.tag, AngleTag::Special);
  const OctahedronPose pose = construct_inscribed_octahedron(angle, *c.certificate, 3.5);
  EXPECT_NEAR(pose.scale, 3.5, 1e-12);
  expect_inscribed_in_cone(angle, pose, 1e-9);
}

TEST(Construct, CubeCornerHasNoCertificate) {
  const AngleClass c = classify_trihedral(cube_corner());
  EXPECT_FALSE(c.certificate.has_value());
}

TEST(Construct, ValidOnRandomSpecialAngles) {
  SplitMix rng(59);
  int built = 0;
  for (int k = 0; k < 400; ++k) {
    const SolidAngle angle = solid_angle_from_triangle(random_triangle(rng, 0.05, 1.0), rng.unit_vector());
    const AngleClass c = classify_trihedral(angle);
    if (c.tag != AngleTag::Special || c.margin < 1e-6) continue;
    const OctahedronPose pose = construct_inscribed_octahedron(angle, *c.certificate);
    expect_inscribed_in_cone(angle, pose, 1e-8);
    ++built;
  }
  EXPECT_GT(built, 50);
}

TEST(FitsInT0, Examples) {
  const SpherePoint center(t0_triangle().vertex(0).v() + t0_triangle().vertex(1).v() + t0_triangle().vertex(2).v());
  const Vec3 u = any_orthogonal(center.v());
  const Vec3 w = center.v().cross(u);
  std::vector<SpherePoint> tiny;
  for (int k = 0; k < 4; ++k) {
    const double phi = k * kPi / 2;
    tiny.emplace_back(center.v() + 0.025 * (std::cos(phi) * u + std::sin(phi) * w));
  }
  const T0Fit fit = fits_in_T0(SphPolygon(tiny));
  EXPECT_EQ(fit.tag, FitTag::Fits);
  EXPECT_GT(fit.margin, 0.1);

  const SphPolygon octant({SpherePoint(1, 0, 0), SpherePoint(0, 1, 0), SpherePoint(0, 0, 1)});
  EXPECT_EQ(fits_in_T0(octant).tag, FitTag::NoFit);

  std::vector<SpherePoint> own;
  for (const auto& v : t0_vertices()) own.emplace_back(v);
  const T0Fit self = fits_in_T0(SphPolygon(own));
  EXPECT_EQ(self.tag, FitTag::Indeterminate);
  EXPECT_LT(std::abs(self.margin), kAngleTol);
}

TEST(FitsInT0, WitnessRotationIsValid) {
  SplitMix rng(61);
  for (int k = 0; k < 20; ++k) {
    std::vector<SpherePoint> pts;
    const Vec3 axis = rng.unit_vector();
    const Vec3 u = any_orthogonal(axis), w = axis.cross(u);
    for (int i = 0; i < 5; ++i) {
      const double phi = 2 * kPi * i / 5 + 0.1 * rng.uniform();
      pts.emplace_back(axis + 0.3 * (std::cos(phi) * u + std::sin(phi) * w));
    }
    const T0Fit fit = fits_in_T0(SphPolygon(pts));
    if (fit.tag != FitTag::Fits) continue;
    const Mat3 r = fit.rotation.toRotationMatrix();
    for (const auto& p : pts) EXPECT_GE(containment_margin(t0_triangle(), r * p.v()), fit.margin - 1e-12);
  }
}

TEST(ClassifyGeneral, Examples) {
  const GeneralClass corner = classify_general(cube_corner());
  EXPECT_EQ(corner.tag, GeneralTag::Trihedral);
  ASSERT_TRUE(corner.trihedral);
  EXPECT_EQ(corner.trihedral->tag, AngleTag::NonSpecial);

  // Square pyramid apex with all four facet angles 0.2 rad.
  const double h = 1.0 / std::tan(0.1) / std::sqrt(2.0);
  const SolidAngle apex(Vec3::Zero(), {Vec3(1, 0, h), Vec3(0, 1, h), Vec3(-1, 0, h), Vec3(0, -1, h)});
  for (double a : apex.facet_angles()) EXPECT_NEAR(a, 0.2, 1e-3);
  const GeneralClass small = classify_general(apex);
  EXPECT_EQ(small.tag, GeneralTag::NotInA0);
  EXPECT_FALSE(small.note.empty());

  // Four edges with angular diameter 2.0.
  const double t = std::tan(1.0);
  const SolidAngle wide(Vec3::Zero(), {Vec3(t, 0, 1), Vec3(0, t, 1), Vec3(-t, 0, 1), Vec3(0, -t, 1)});
  EXPECT_NEAR(wide.polygon().diameter(), 2.0, 1e-12);
  EXPECT_EQ(classify_general(wide).tag, GeneralTag::InA0);
}

TEST(DeformationPath, Examples) {
  const auto single = deformation_path(triangle_from_sides(1.2, 1.0, 0.8), 60);
  EXPECT_EQ(single.size(), 1u);

  const auto path = deformation_path(remark_triangle(), 60);
  EXPECT_GE(path.size(), 60u);
  for (const auto& t : path) EXPECT_EQ(placement_test(t).tag, AngleTag::NonSpecial);
  const auto& last = path.back();
  EXPECT_GT(std::max({last.side(0), last.side(1), last.side(2)}), kPi / 3 + 0.01);

  EXPECT_THROW(deformation_path(triangle_from_sides(kPi / 8, kPi / 8, kPi / 8), 60), GeometryError);
}

TEST(DeformationPath, RandomNonSpecialStart) {
  SplitMix rng(67);
  int done = 0;
  for (int k = 0; k < 2000 && done < 20; ++k) {
    const SphTriangle tri = random_triangle(rng, 0.4, kPi / 3);
    const AngleClass c = placement_test(tri);
    if (c.tag != AngleTag::NonSpecial) continue;
    const auto path = deformation_path(tri, 50);
    EXPECT_GE(path.size(), 50u);
    for (const auto& t : path) EXPECT_EQ(placement_test(t).tag, AngleTag::NonSpecial);
    ++done;
  }
  EXPECT_EQ(done, 20);
}
