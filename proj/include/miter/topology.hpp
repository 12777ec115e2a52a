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

#pragma once

#include <string>
#include <vector>

#include "miter/extraction.hpp"
#include "miter/mesh.hpp"

namespace miter {

/// Indexed offset mesh with unique exact vertices.
struct WeldedMesh {
  std::vector<RPoint> vertices;
  std::vector<TriIndex> triangles;
  /// Source polyhedron per triangle, -1 for triangles added by cleanup.
  std::vector<int> source;

  bool empty() const { return triangles.empty(); }
  RTriangle triangle(size_t t) const {
    const TriIndex& f = triangles[t];
    return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
  }
};

/// Merges exactly equal vertices. Copies of a triangle (same vertex set, any
/// orientation) collapse to one with the majority orientation; ties keep the
/// first. `flip` reverses every triangle.
WeldedMesh weld(const std::vector<ClassifiedTriangle>& soup, bool flip);
/// Same merge for an input soup; nothing is collapsed.
WeldedMesh weld(const TriangleSoup& mesh);

/// Closed chains of boundary half-edges (a half-edge whose reverse is not
/// present). Chains that revisit a vertex are split there.
std::vector<std::vector<int>> boundary_loops(const WeldedMesh& mesh);

struct HoleReport {
  int filled_loops = 0;
  int open_loops = 0;
  int added_triangles = 0;
};

/// Closes every boundary loop whose vertices are collinear with zero-area
/// triangles, one ear at a time. Each new edge must stay off the interior of
/// existing triangles. Other loops stay open and are counted.
HoleReport fill_zero_area_holes(WeldedMesh& mesh);

/// Removes zero-area triangles without changing the surface: triangles with
/// a repeated vertex are dropped, slivers with a vertex inside their longest
/// edge split the neighbor across that edge. Returns the number of removed
/// triangles. Throws kGeometry if the count stops falling.
int eliminate_degenerates(WeldedMesh& mesh);

struct ValidityReport {
  bool watertight = false;
  bool manifold = false;
  bool orientation_consistent = false;
  int boundary_edges = 0;
  int nonmanifold_edges = 0;
  long self_intersections = 0;
  int zero_area = 0;
  int components = 0;
  /// Per component; -1 where the component is not a closed surface.
  std::vector<int> genus;
  int vertices = 0;
  int triangles = 0;
};

/// Pairs of triangles whose intersection is more than the hull of their
/// shared vertices. Zero-area triangles are skipped.
long count_self_intersections(const std::vector<RPoint>& vertices,
                              const std::vector<TriIndex>& triangles);

ValidityReport validate_mesh(const WeldedMesh& mesh);

struct FinalizeResult {
  ValidityReport report;
  HoleReport holes;
  int removed_degenerates = 0;
};

/// Hole filling, degenerate elimination and validation, in that order.
FinalizeResult finalize(WeldedMesh& mesh);

/// Vertices rounded to `digits` significant decimal digits, as written to
/// a text file.
std::vector<RPoint> quantize(const std::vector<RPoint>& vertices, int digits);

/// Self-intersection count after rounding to `digits` significant digits.
long quantized_self_intersections(const WeldedMesh& mesh, int digits);

}  // namespace miter
