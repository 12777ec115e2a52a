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

#include <array>
#include <span>
#include <vector>

#include "miter/predicates.hpp"

namespace miter {

struct FacetConstraints {
  std::vector<RPoint> points;
  std::vector<std::array<RPoint, 2>> segments;

  bool empty() const { return points.empty() && segments.empty(); }
};

/// Triangulates a planar simple polygon so that every constraint point is a
/// vertex and every constraint segment is a union of edges. Output triangles
/// share the polygon's orientation and have non-zero area. The triangulation
/// is valid but not necessarily Delaunay.
///
/// Throws kGeometry when a constraint leaves the polygon's plane or interior.
std::vector<RTriangle> constrained_facet_triangulation(
    std::span<const RPoint> polygon, const FacetConstraints& constraints);

/// Ear clipping with a diagonal-split fallback for polygons that have
/// collinear runs. `poly` indexes `pts` and must be counter-clockwise.
void triangulate_polygon_2d(const std::vector<RPoint2>& pts,
                            std::vector<int> poly,
                            std::vector<std::array<int, 3>>& out);

}  // namespace miter
