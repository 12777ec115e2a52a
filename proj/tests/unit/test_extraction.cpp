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

#include <map>
#include <random>
#include <string>

#include "miter/error.hpp"

#include "fixtures.hpp"
#include "harness.hpp"
#include "miter/convex_hull.hpp"
#include "miter/topology.hpp"
#include "oracles.hpp"

namespace miter {
namespace {

using testing::named;
using testing::offset_stack;
using testing::relative_distance;
using testing::triangles_of;

TriangleSoup sheet(const std::vector<RTriangle>& tris) {
  TriangleSoup m;
  for (const RTriangle& t : tris) {
    const int base = static_cast<int>(m.vertices.size());
    m.vertices.insert(m.vertices.end(), t.begin(), t.end());
    m.triangles.push_back({base, base + 1, base + 2});
  }
  m.set_uniform_distance(0);
  return m;
}

const Rational kTenth(1, 10);

std::map<FaceClass, int> class_counts(const Extractor& x) {
  std::map<FaceClass, int> counts;
  for (size_t g = 0; g < x.num_facets(); ++g)
    for (const RTriangle& piece : x.resolve_facet(g)) ++counts[x.classify(g, piece)];
  return counts;
}

TEST(Resolve, SinglePrismKeepsItsFacets) {
  const auto s = offset_stack(sheet({{RPoint(0, 0, 0), RPoint(1, 0, 0), RPoint(0, 1, 0)}}),
                              kTenth, 1);
  ASSERT_EQ(s->volumes.polyhedra.size(), 1u);
  const Extractor x = s->extractor();
  ASSERT_EQ(x.num_facets(), 8u);
  for (size_t g = 0; g < x.num_facets(); ++g) {
    const auto pieces = x.resolve_facet(g);
    ASSERT_EQ(pieces.size(), 1u);
    EXPECT_EQ(pieces[0], x.facet_triangle(g));
  }
  const ExtractionResult r = x.brute_force();
  EXPECT_EQ(r.triangles.size(), 7u);  // all but the input facet
}

TEST(Resolve, DisjointPrismsAreUnchanged) {
  const auto s = offset_stack(
      sheet({{RPoint(0, 0, 0), RPoint(1, 0, 0), RPoint(0, 1, 0)},
             {RPoint(5, 0, 0), RPoint(6, 0, 0), RPoint(5, 1, 0)}}),
      kTenth, 1);
  const Extractor x = s->extractor();
  ASSERT_EQ(x.num_facets(), 16u);
  for (size_t g = 0; g < x.num_facets(); ++g) EXPECT_EQ(x.resolve_facet(g).size(), 1u);
  EXPECT_EQ(x.brute_force().counters.tri_tri_calls, 0u);
}

TEST(Resolve, PiecesTileTheFacet) {
  const auto s = offset_stack(named("two_cubes"), kTenth, 1);
  const Extractor x = s->extractor();
  for (size_t g = 0; g < x.num_facets(); g += 7) {
    const RTriangle F = x.facet_triangle(g);
    const auto pieces = x.resolve_facet(g);
    const RPoint n = triangle_normal(F);
    Rational total = 0;
    for (const RTriangle& p : pieces) {
      const RPoint pn = triangle_normal(p);
      EXPECT_TRUE(is_zero(pn.cross(n)));
      EXPECT_GT(pn.dot(n), 0);
      total += pn.dot(n);
      for (const RPoint& v : p) EXPECT_TRUE(point_in_triangle(v, F));
    }
    EXPECT_EQ(total, n.dot(n));
  }
}

TEST(Classify, EnclosedAndKept) {
  // Two overlapping sheets 0.05 apart: the lower prism's top is inside the
  // upper prism where they overlap.
  const auto s = offset_stack(
      sheet({{RPoint(0, 0, 0), RPoint(2, 0, 0), RPoint(0, 2, 0)},
             {RPoint(0, 0, Rational(1, 20)), RPoint(2, 0, Rational(1, 20)),
              RPoint(0, 2, Rational(1, 20))}}),
      kTenth, 1);
  const Extractor x = s->extractor();
  bool saw_enclosed = false, saw_top = false;
  for (size_t g = 0; g < x.num_facets(); ++g) {
    const RTriangle F = x.facet_triangle(g);
    const RPoint n = triangle_normal(F);
    if (!(is_zero(RPoint(n[0], n[1], 0)) && n[2] > 0)) continue;
    for (const RTriangle& piece : x.resolve_facet(g)) {
      const FaceClass c = x.classify(g, piece);
      if (F[0][2] == kTenth) {
        EXPECT_EQ(c, FaceClass::kEnclosed);
        saw_enclosed = true;
      } else if (F[0][2] == Rational(3, 20)) {
        EXPECT_EQ(c, FaceClass::kOutput);
        saw_top = true;
      }
    }
  }
  EXPECT_TRUE(saw_enclosed);
  EXPECT_TRUE(saw_top);
}

TEST(Classify, FaceToFaceFacetsBothDrop) {
  // Prisms [0, 0.1] and [0.1, 0.2] in z over the same footprint.
  const auto s = offset_stack(
      sheet({{RPoint(0, 0, 0), RPoint(1, 0, 0), RPoint(0, 1, 0)},
             {RPoint(0, 0, Rational(1, 5)), RPoint(0, 1, Rational(1, 5)),
              RPoint(1, 0, Rational(1, 5))}}),
      kTenth, 1);
  const Extractor x = s->extractor();
  int shared = 0;
  for (size_t g = 0; g < x.num_facets(); ++g) {
    const RTriangle F = x.facet_triangle(g);
    if (!(F[0][2] == kTenth && F[1][2] == kTenth && F[2][2] == kTenth)) continue;
    for (const RTriangle& piece : x.resolve_facet(g)) {
      EXPECT_EQ(x.classify(g, piece), FaceClass::kShared);
      ++shared;
    }
  }
  EXPECT_GE(shared, 2);
}

TEST(Classify, SameFacingDuplicatesKeepOneCopy) {
  // Two identical sheets: their prisms coincide and one copy survives.
  const RTriangle t = {RPoint(0, 0, 0), RPoint(1, 0, 0), RPoint(0, 1, 0)};
  const auto s = offset_stack(sheet({t, t}), kTenth, 1);
  const Extractor x = s->extractor();
  const ExtractionResult r = x.brute_force();
  const auto tris = triangles_of(r);
  EXPECT_NEAR(oracle::exact_area(tris),
              oracle::exact_area(triangles_of(offset_stack(sheet({t}), kTenth, 1)->extractor().brute_force())),
              1e-12);
}

TEST(Classify, WrongSide) {
  // Faces of one cube inside the other produce wrong-side pieces.
  const auto s = offset_stack(named("two_cubes"), kTenth, 1);
  const auto counts = class_counts(s->extractor());
  EXPECT_GT(counts.at(FaceClass::kWrongSide), 0);
  EXPECT_GT(counts.at(FaceClass::kOutput), 0);
  EXPECT_GT(counts.at(FaceClass::kInput), 0);
  // The open cube's centre counts as inside.
  const auto open = offset_stack(named("open_cube"), kTenth, 1);
  EXPECT_TRUE(open->side->inside(RPoint(Rational(1, 2), Rational(1, 2), Rational(1, 2))));
}

TEST(Extract, CubeSurfaceArea) {
  const auto s = offset_stack(testing::unit_cube(), kTenth, 1);
  const ExtractionResult r = s->extractor().extract();
  EXPECT_NEAR(oracle::exact_area(triangles_of(r)), 6 * 1.2 * 1.2, 1e-12);
  const auto counts = class_counts(s->extractor());
  EXPECT_EQ(counts.count(FaceClass::kWrongSide), 0u);
  for (const ClassifiedTriangle& t : r.triangles)
    for (const RPoint& v : t.triangle)
      for (int k = 0; k < 3; ++k) EXPECT_TRUE(abs(v[k] - Rational(1, 2)) == Rational(3, 5));
}

TEST(Extract, FinSlab) {
  const auto s = offset_stack(testing::fin(), kTenth, 1);
  const ExtractionResult r = s->extractor().extract();
  WeldedMesh m = weld(r.triangles, false);
  const FinalizeResult fin = finalize(m);
  EXPECT_TRUE(fin.report.watertight);
  EXPECT_EQ(fin.report.self_intersections, 0);
  EXPECT_EQ(testing::signed_volume(m.vertices, m.triangles), 2 * kTenth);
  EXPECT_NEAR(oracle::exact_area(triangles_of(r)), 2 + 4 * 0.2, 1e-12);
}

// The arrangement oracle cuts facets by polyhedron planes instead of
// triangle intersections, then classifies each cell on its own. Inward
// offsets of open meshes are left out: the winding number varies across
// pieces near the hole, so the side test depends on how a facet was cut.
TEST(Extract, MatchesArrangementOracle) {
  for (const char* name : {"cube", "fin", "prism_345", "octahedron", "open_cube"}) {
    for (int dir : {1, -1}) {
      if (dir < 0 && std::string(name) == "open_cube") continue;
      const TriangleSoup mesh = named(name);
      const auto s = offset_stack(mesh, relative_distance(mesh, 0.01), dir);
      size_t facets = 0;
      for (const auto& p : s->volumes.polyhedra) facets += p.facets.size();
      if (facets > oracle::kMaxExtractFacets) {
        ADD_FAILURE() << name << " has " << facets << " facets";
        continue;
      }
      const auto fast = triangles_of(s->extractor().extract());
      const auto ref = oracle::oracle_extract(s->volumes, s->mesh, dir, s->diagonal);
      const double a = oracle::exact_area(fast), b = oracle::exact_area(ref);
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, b)) << name << " dir " << dir;
      EXPECT_EQ(oracle::membership_mismatches(fast, ref, 5000, 1), 0) << name << " dir " << dir;
      EXPECT_EQ(oracle::membership_mismatches(ref, fast, 5000, 2), 0) << name << " dir " << dir;
    }
  }
}

TEST(Extract, SpeedupsMatchBruteForce) {
  for (auto [name, mesh] : testing::corpus()) {
    const auto s = offset_stack(mesh, relative_distance(mesh, 0.01), 1, 4);
    ExtractionConfig fast_cfg;
    fast_cfg.threads = 4;
    const ExtractionResult fast = s->extractor(fast_cfg).extract();
    const ExtractionResult brute = s->extractor(fast_cfg).brute_force();
    const auto a = triangles_of(fast), b = triangles_of(brute);
    EXPECT_NEAR(oracle::exact_area(a), oracle::exact_area(b), 1e-12 * oracle::exact_area(b))
        << name;
    EXPECT_EQ(oracle::membership_mismatches(a, b, 2000, 3), 0) << name;
    EXPECT_EQ(oracle::membership_mismatches(b, a, 2000, 4), 0) << name;
    EXPECT_LE(fast.counters.tri_tri_calls, brute.counters.tri_tri_calls) << name;
    // Each speedup alone gives the same surface too.
    for (int which = 0; which < 3; ++which) {
      ExtractionConfig c;
      c.deferral = which != 0;
      c.early_reject = which != 1;
      c.use_grid = which != 2;
      const auto t = triangles_of(s->extractor(c).extract());
      EXPECT_NEAR(oracle::exact_area(t), oracle::exact_area(b), 1e-12 * oracle::exact_area(b))
          << name << " variant " << which;
    }
  }
}

TEST(Extract, OutputIsIntersectionFree) {
  for (auto [name, mesh] : testing::corpus()) {
    for (int dir : {1, -1}) {
      const auto s = offset_stack(mesh, relative_distance(mesh, 0.01), dir, 4);
      ExtractionConfig c;
      c.threads = 4;
      const ExtractionResult r = s->extractor(c).extract();
      if (r.triangles.empty()) continue;
      const WeldedMesh m = weld(r.triangles, dir < 0);
      EXPECT_EQ(count_self_intersections(m.vertices, m.triangles), 0) << name << " dir " << dir;
    }
  }
}

// Closed offsets of closed, clean inputs bound a region: the winding number
// of the output is an integer away from it.
TEST(Extract, ClosedOutputHasIntegerWinding) {
  std::mt19937_64 rng(8);
  for (const char* name : {"cube", "l_bracket", "torus", "cylinder"}) {
    const TriangleSoup mesh = named(name);
    const auto s = offset_stack(mesh, relative_distance(mesh, 0.01), 1);
    WeldedMesh m = weld(s->extractor().extract().triangles, false);
    finalize(m);
    TriangleSoup out;
    out.vertices = m.vertices;
    out.triangles = m.triangles;
    const BBoxInfo bb = bbox_diagonal(out);
    std::uniform_real_distribution<double> u(-0.1, 1.1);
    for (int i = 0; i < 100; ++i) {
      const Vec3d q = bb.min + Vec3d(u(rng), u(rng), u(rng)).cwiseProduct(bb.max - bb.min);
      const double w = oracle::oracle_winding(q, out);
      if (std::abs(w - std::round(w)) > 1e-3) {
        // Only acceptable right next to the surface.
        double near = 1e300;
        for (size_t t = 0; t < out.num_triangles(); ++t)
          near = std::min(near, squared_distance(q, out.triangle_d(static_cast<int>(t))));
        EXPECT_LT(std::sqrt(near), 1e-3 * bb.diagonal) << name;
      }
    }
  }
}

// Hand-built configurations around one facet F in z = 0.
struct EarlyRejectScene {
  TriangleSoup far_input;
  std::unique_ptr<MeshIndex> index;
  std::unique_ptr<SideOracle> side;
  OffsetVolumeSet volumes;
  size_t facet = 0;
};

ConvexPolyhedron hull_of(std::vector<RPoint> pts) {
  ConvexPolyhedron p = convex_hull(pts);
  p.source = {SourceKind::kVertex, 0};
  return p;
}

ConvexPolyhedron small_tet(const Rational& x, const Rational& y) {
  const Rational e(1, 10);
  return hull_of({RPoint(x, y, -e), RPoint(x + e, y, e), RPoint(x, y + e, e),
                  RPoint(x + e, y + e, -e)});
}

std::unique_ptr<EarlyRejectScene> scene(std::vector<ConvexPolyhedron> others) {
  auto s = std::make_unique<EarlyRejectScene>();
  s->far_input = sheet({{RPoint(100, 100, 100), RPoint(101, 100, 100), RPoint(100, 101, 100)}});
  s->far_input.set_uniform_distance(Rational(1, 10));
  s->index = std::make_unique<MeshIndex>(s->far_input);
  s->side = std::make_unique<SideOracle>(testing::triangles_of(s->far_input), 1e-9);
  s->volumes.polyhedra.push_back(
      hull_of({RPoint(0, 0, 0), RPoint(4, 0, 0), RPoint(0, 4, 0), RPoint(1, 1, -1)}));
  for (auto& p : others) s->volumes.polyhedra.push_back(std::move(p));
  return s;
}

size_t top_facet(const Extractor& x) {
  for (size_t g = 0; g < x.num_facets(); ++g) {
    if (x.facet(g).first != 0) continue;
    const RTriangle F = x.facet_triangle(g);
    if (F[0][2] == 0 && F[1][2] == 0 && F[2][2] == 0) return g;
  }
  throw std::runtime_error("no top facet");
}

TEST(EarlyReject, MostlyCoveredFacet) {
  std::vector<ConvexPolyhedron> others;
  others.push_back(hull_of({RPoint(-1, -1, -1), RPoint(2, -1, -1), RPoint(2, 5, -1),
                            RPoint(-1, 5, -1), RPoint(-1, -1, 1), RPoint(2, -1, 1),
                            RPoint(2, 5, 1), RPoint(-1, 5, 1)}));
  for (int i = 0; i < 4; ++i) others.push_back(small_tet(Rational(5, 2) + Rational(i, 4), Rational(1, 4)));
  const auto s = scene(std::move(others));
  const Extractor x(s->volumes, *s->index, *s->side, 1, 10.0, ExtractionConfig{});
  const size_t g = top_facet(x);
  const auto near = x.nearby_polyhedra(g);
  ASSERT_EQ(near.size(), 5u);
  const Extractor::EarlyReject er = x.early_reject_subdivide(g, near);
  // Parts: two corners and the middle lie in x <= 2 and are covered.
  EXPECT_TRUE(er.dropped[0]);
  EXPECT_FALSE(er.dropped[1]);
  EXPECT_TRUE(er.dropped[2]);
  EXPECT_TRUE(er.dropped[3]);
  EXPECT_EQ(er.chosen[0], 1);
  EXPECT_FALSE(er.all_dropped());
}

TEST(EarlyReject, UncoveredFacetKeepsAllParts) {
  std::vector<ConvexPolyhedron> others;
  for (int i = 0; i < 5; ++i) others.push_back(small_tet(Rational(i, 2), Rational(1, 2)));
  const auto s = scene(std::move(others));
  const Extractor x(s->volumes, *s->index, *s->side, 1, 10.0, ExtractionConfig{});
  const size_t g = top_facet(x);
  const auto near = x.nearby_polyhedra(g);
  ASSERT_EQ(near.size(), 5u);
  const Extractor::EarlyReject er = x.early_reject_subdivide(g, near);
  for (int j = 0; j < 4; ++j) EXPECT_FALSE(er.dropped[j]);
}

TEST(EarlyReject, ThresholdAndSavings) {
  auto covering = [] {
    return hull_of({RPoint(-1, -1, -1), RPoint(5, -1, -1), RPoint(-1, 5, -1),
                    RPoint(-1, -1, 1), RPoint(5, -1, 1), RPoint(-1, 5, 1)});
  };
  for (int extra : {3, 4}) {
    std::vector<ConvexPolyhedron> others = {covering()};
    for (int i = 0; i < extra; ++i) others.push_back(small_tet(Rational(i, 2), Rational(1, 2)));
    const auto s = scene(std::move(others));
    ExtractionConfig c;
    c.deferral = false;
    const Extractor x(s->volumes, *s->index, *s->side, 1, 10.0, c);
    const ExtractionResult fast = x.extract();
    const ExtractionResult brute = x.brute_force();
    const size_t n_p = 1 + extra;
    if (n_p < 5) {
      EXPECT_EQ(fast.counters.early_rejected, 0u);
      EXPECT_EQ(fast.counters.tri_tri_calls, brute.counters.tri_tri_calls);
    } else {
      EXPECT_GE(fast.counters.early_rejected, 1u);
      EXPECT_LT(fast.counters.tri_tri_calls, brute.counters.tri_tri_calls);
    }
    EXPECT_NEAR(oracle::exact_area(triangles_of(fast)), oracle::exact_area(triangles_of(brute)),
                1e-12);
  }
}

TEST(Extract, TimeLimit) {
  const auto s = offset_stack(named("torus"), relative_distance(named("torus"), 0.01), 1);
  ExtractionConfig c;
  c.deadline = std::chrono::steady_clock::now();
  EXPECT_THROW(s->extractor(c).extract(), Error);
}

}  // namespace
}  // namespace miter
