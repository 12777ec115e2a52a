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

#include <vector>

#include "miter/predicates.hpp"

namespace miter {

enum class IntersectionKind { kEmpty, kPoint, kSegment, kPolygon };

struct TriTriIntersection {
  IntersectionKind kind = IntersectionKind::kEmpty;
  /// One point, two segment endpoints, or a convex polygon (counter-clockwise
  /// about the first triangle's normal).
  std::vector<RPoint> points;
};

/// Exact intersection of two non-degenerate triangles. Throws kGeometry on a
/// degenerate input.
TriTriIntersection tri_tri_intersection(const RTriangle& a,
                                        const RTriangle& b);

/// Closed test: segment [a, b] meets triangle t.
bool segment_meets_triangle(const RPoint& a, const RPoint& b,
                            const RTriangle& t);

/// Common region of two triangles in the plane, counter-clockwise.
std::vector<RPoint2> clip_coplanar(const std::array<RPoint2, 3>& a,
                                   const std::array<RPoint2, 3>& b);

}  // namespace miter
