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
#include "miter/predicates.hpp"

namespace miter {

enum class RayStatus { kMiss, kHit, kDegenerate };

struct RayHit {
  RayStatus status = RayStatus::kMiss;
  /// Nearest hit primitive and its ray parameter.
  int primitive = -1;
  Rational t;
  /// Number of proper hits along the ray (for parity tests).
  int count = 0;
};

/// Builds a tree whose boxes enclose the triangles outward-rounded.
AabbTree build_triangle_tree(std::span<const RTriangle> triangles);

/// Exact ray cast against `triangles`, filtered by `tree`. A ray that
/// touches an edge or vertex, runs inside a triangle's plane, or starts on a
/// triangle yields kDegenerate. Excluded ids are skipped.
RayHit ray_first_hit(const RPoint& origin, const RPoint& direction,
                     std::span<const RTriangle> triangles, const AabbTree& tree,
                     std::span<const int> exclude = {});

/// Same query without the tree.
RayHit ray_first_hit_brute(const RPoint& origin, const RPoint& direction,
                           std::span<const RTriangle> triangles,
                           std::span<const int> exclude = {});

/// Hit parity (0 or 1) along the first non-degenerate of up to `attempts`
/// fixed directions, or -1 when all of them were degenerate.
int ray_parity(const RPoint& origin, std::span<const RTriangle> triangles,
               const AabbTree& tree, int attempts = 8);

}  // namespace miter
