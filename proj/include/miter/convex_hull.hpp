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

#include <span>
#include <vector>

#include "miter/aabb.hpp"
#include "miter/mesh.hpp"
#include "miter/predicates.hpp"

namespace miter {

enum class SourceKind { kNone, kVertex, kEdge, kTriangle };

struct SourceTag {
  SourceKind kind = SourceKind::kNone;
  int id = -1;
};

struct ConvexPolyhedron {
  std::vector<RPoint> vertices;
  /// Outward-oriented triangles; empty when dimension < 3.
  std::vector<TriIndex> facets;
  /// Supporting plane of each facet, normal pointing out.
  std::vector<RPlane> planes;
  int dimension = -1;
  SourceTag source;
  Box box;
  /// For each vertex, the index of the input point it came from.
  std::vector<int> input_index;

  RTriangle facet(int f) const {
    return {vertices[facets[f][0]], vertices[facets[f][1]],
            vertices[facets[f][2]]};
  }
  /// Closed containment (boundary counts as inside).
  bool contains(const RPoint& p) const;
  bool strictly_contains(const RPoint& p) const;
};

/// Exact incremental hull. Points coplanar with an existing facet are
/// absorbed, so neighbouring facets may be coplanar.
ConvexPolyhedron convex_hull(std::span<const RPoint> points);

}  // namespace miter
