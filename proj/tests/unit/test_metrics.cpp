// Copyright 2026 The Miter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "harness.hpp"
#include "miter/metrics.hpp"
#include "miter/pipeline.hpp"
#include "oracles.hpp"

namespace miter {
namespace {

SurfaceMesh surface(const TriangleSoup& soup) { return SurfaceMesh::from(weld(soup)); }

SurfaceMesh cube_of(const Rational& half) {
  return surface(testing::box(RPoint(-half, -half, -half), RPoint(half, half, half)));
}

SurfaceMesh square_at(const Rational& z) {
  TriangleSoup m;
  m.vertices = {RPoint(0, 0, z), RPoint(1, 0, z), RPoint(1, 1, z), RPoint(0, 1, z)};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return surface(m);
}

std::vector<oracle::AngleSample> angle_samples(const FeatureLineSet& f) {
  std::vector<oracle::AngleSample> out;
  for (const FeatureSample& s : f.samples) out.push_back({s.point, s.dihedral, s.weight});
  return out;
}

SamplerConfig sampler(double density, uint64_t seed = 1) {
  SamplerConfig c;
  c.density = density;
  c.seed = seed;
  return c;
}

TEST(Sampling, WeightsSumToArea) {
  const SurfaceMesh m = cube_of(Rational(1, 2));
  const SurfaceSamples s = sample_surface(m, std::sqrt(3.0), sampler(1e3));
  double total = 0;
  for (double w : s.weights) total += w;
  EXPECT_NEAR(total, 6.0, 1e-9);
  EXPECT_NEAR(m.area(), 6.0, 1e-12);
  EXPECT_GE(s.points.size(), 12u * 10u);
  for (size_t i = 0; i < s.points.size(); ++i)
    EXPECT_LT(std::sqrt(squared_distance(s.points[i], m.triangle(s.triangles[i]))), 1e-12);
}

TEST(Distance, IdentityIsZero) {
  const SurfaceMesh m = surface(testing::named("l_bracket"));
  const double l = 1.0;
  EXPECT_NEAR(h_point(m, m, l, sampler(1e4)).value, 0.0, 1e-12);
  EXPECT_NEAR(h_plane(m, m, l, sampler(1e4)).value, 0.0, 1e-12);
}

TEST(Distance, ParallelSquares) {
  const SurfaceMesh a = square_at(0), b = square_at(Rational(1, 10));
  EXPECT_NEAR(h_point(b, a, 1.0, sampler(1e4)).value, 0.1, 1e-12);
  EXPECT_NEAR(h_plane(b, a, 1.0, sampler(1e4)).value, 0.1, 1e-12);
}

TEST(Distance, QueryPicksSmallestPlaneAtSharedPoints) {
  const SurfaceMesh cube = cube_of(Rational(1, 2));
  const DistanceQuery q(cube);
  // Beyond an edge: the closest point is on the edge, the nearer plane wins.
  const DistanceQuery::Result r = q.query(Vec3d(0.6, 0.55, 0));
  EXPECT_NEAR(r.point_distance, std::hypot(0.1, 0.05), 1e-15);
  EXPECT_NEAR(r.plane_distance, 0.05, 1e-15);
}

TEST(Distance, CubeShellAgainstDenseOracle) {
  const SurfaceMesh inner = cube_of(Rational(1, 2)), outer = cube_of(Rational(3, 5));
  const double l = std::sqrt(3.0);
  const SurfaceSamples s = sample_surface(outer, l, sampler(1e4));
  const oracle::DenseDistance dense = oracle::oracle_mean_distance(
      outer.vertices, outer.triangles, inner.vertices, inner.triangles, 10 * s.points.size(), 7);
  const double hp = h_point(outer, inner, l, sampler(1e4)).value;
  const double hq = h_plane(outer, inner, l, sampler(1e4)).value;
  EXPECT_NEAR(hp, dense.point, 0.01 * dense.point);
  EXPECT_NEAR(hq, dense.plane, 0.01 * dense.plane);
  EXPECT_LE(hq, hp);
  // Samples over the faces sit exactly 0.1 off their plane; edge strips are
  // closer to a plane and farther from the surface.
  EXPECT_LT(hq, 0.1);
  EXPECT_GT(hp, 0.1);
}

TEST(Distance, PlaneNeverExceedsPoint) {
  const SurfaceMesh a = surface(testing::named("torus"));
  const SurfaceMesh b = surface(testing::named("sphere"));
  const DistanceQuery q(b);
  const SurfaceSamples s = sample_surface(a, 1.0, sampler(1e3));
  for (const Vec3d& p : s.points) {
    const DistanceQuery::Result r = q.query(p);
    EXPECT_LE(r.plane_distance, r.point_distance + 1e-15);
  }
}

TEST(Distance, DeterministicAndConvergent) {
  const SurfaceMesh inner = surface(testing::named("cylinder"));
  TriangleSoup mesh = testing::named("cylinder");
  mesh.set_uniform_distance(testing::relative_distance(mesh, 0.01));
  const RunResult r = run_offset(mesh, RunConfig{});
  const SurfaceMesh outer = SurfaceMesh::from(r.mesh);
  const double l = r.diagonal;
  const double a = h_point(outer, inner, l, sampler(1e4)).value;
  EXPECT_EQ(a, h_point(outer, inner, l, sampler(1e4), 4).value);
  const double b = h_point(outer, inner, l, sampler(2e4, 2)).value;
  EXPECT_NEAR(a, b, 0.01 * b);
}

TEST(Features, CubeEdges) {
  const FeatureLineSet f = detect_features(cube_of(Rational(1, 2)), 30, 1e-2);
  EXPECT_EQ(f.edges.size(), 12u);
  EXPECT_NEAR(f.length, 12.0, 1e-12);
  for (const FeatureEdge& e : f.edges) EXPECT_NEAR(e.dihedral, std::numbers::pi / 2, 1e-12);
  for (const auto& chain : f.chains) {
    ASSERT_GE(chain.size(), 2u);
  }
  double w = 0;
  for (const FeatureSample& s : f.samples) w += s.weight;
  EXPECT_NEAR(w, 12.0, 1e-9);
}

TEST(Features, SmoothSurfaceHasNone) {
  EXPECT_TRUE(detect_features(surface(testing::sphere(3)), 30, 1e-2).edges.empty());
}

TEST(Features, CylinderRims) {
  const FeatureLineSet f = detect_features(surface(testing::cylinder(24, 0.5, 1.0)), 30, 1e-2);
  ASSERT_FALSE(f.edges.empty());
  for (const FeatureEdge& e : f.edges) EXPECT_NEAR(e.dihedral, std::numbers::pi / 2, 1e-9);
  EXPECT_EQ(f.chains.size(), 2u);
  for (const auto& chain : f.chains) EXPECT_EQ(chain.front(), chain.back());
}

TEST(Angle, OffsetCubeKeepsRightAngles) {
  TriangleSoup mesh = testing::unit_cube();
  mesh.set_uniform_distance(Rational(1, 10));
  const RunResult r = run_offset(mesh, RunConfig{});
  const FeatureLineSet a = detect_features(SurfaceMesh::from(r.mesh), 30, 1e-3);
  const FeatureLineSet b = detect_features(surface(testing::unit_cube()), 30, 1e-3);
  EXPECT_NEAR(d_angle(a, b).value, 0.0, 1e-12);
  EXPECT_NEAR(d_angle(b, b).value, 0.0, 1e-15);
  EXPECT_FALSE(d_angle(a, FeatureLineSet{}).defined);
}

TEST(Angle, MatchesAllPairsOracle) {
  const FeatureLineSet a = detect_features(surface(testing::prism_345()), 30, 1e-2);
  const FeatureLineSet b = detect_features(surface(testing::hex_prism()), 30, 1e-2);
  const auto sa = angle_samples(a), sb = angle_samples(b);
  EXPECT_NEAR(d_angle(a, b).value, oracle::oracle_angle_score(sa, sb), 1e-12);
  EXPECT_NEAR(d_angle(b, a).value, oracle::oracle_angle_score(sb, sa), 1e-12);
  EXPECT_GT(d_angle(a, b).value, 0.0);
}

TEST(Measure, CubeReport) {
  TriangleSoup mesh = testing::unit_cube();
  mesh.set_uniform_distance(Rational(1, 10));
  const RunResult r = run_offset(mesh, RunConfig{});
  MetricsConfig c;
  c.sampler.density = 1e3;
  const MeshReport rep = measure(surface(testing::unit_cube()), SurfaceMesh::from(r.mesh),
                                 r.diagonal, 0.1, 1, c);
  EXPECT_TRUE(rep.success);
  // Mitered corners sit farther than d from the cube and closer than d to
  // one of the corner planes.
  EXPECT_GT(rep.h_point_oi.value, 0.1);
  EXPECT_LT(rep.h_plane_oi.value, 0.1);
  EXPECT_EQ(rep.d_plane_oi.value, std::abs(rep.h_plane_oi.value - 0.1));
  EXPECT_EQ(rep.d_point_oi.value, std::abs(rep.h_point_oi.value - 0.1));
  EXPECT_TRUE(rep.h_point_io.defined);
  EXPECT_NEAR(rep.d_angle_oi.value, 0.0, 1e-12);
  const MeshReport in = measure(surface(testing::unit_cube()), SurfaceMesh::from(r.mesh),
                                r.diagonal, 0.1, -1, c);
  EXPECT_FALSE(in.h_point_io.defined);
}

}  // namespace
}  // namespace miter
