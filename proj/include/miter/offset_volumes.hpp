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

#include "miter/convex_hull.hpp"
#include "miter/mesh.hpp"
#include "miter/vertex_offset.hpp"

namespace miter {

struct OffsetVolumeSet {
  /// Full-dimensional polyhedra: triangles first, then edges, then vertices.
  std::vector<ConvexPolyhedron> polyhedra;
  /// Element id to polyhedron id, -1 when skipped or degenerate.
  std::vector<int> triangle_polyhedron;
  std::vector<int> edge_polyhedron;
  std::vector<int> vertex_polyhedron;  // by position id
  /// Elements whose hull had dimension below 3.
  std::vector<SourceTag> degenerate;
  /// Zero-area input triangles, which get no polyhedron.
  std::vector<int> skipped_triangles;

  /// True when facet `f` of polyhedron `p` is an input triangle.
  bool is_input_facet(int p, int f) const;
};

ConvexPolyhedron build_triangle_polyhedron(
    const MeshIndex& index, int triangle,
    const std::vector<OffsetSolution>& solutions);

ConvexPolyhedron build_edge_polyhedron(
    const MeshIndex& index, int edge,
    const std::vector<OffsetSolution>& solutions);

ConvexPolyhedron build_vertex_polyhedron(const MeshIndex& index, int position,
                                         const OffsetSolution& solution);

OffsetVolumeSet build_offset_volumes(
    const MeshIndex& index, const std::vector<OffsetSolution>& solutions,
    int threads);

/// OBJ text of one polyhedron.
std::string polyhedron_obj(const ConvexPolyhedron& p, int digits = 17);

}  // namespace miter
