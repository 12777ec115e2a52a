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

/// Signed solid angle of triangle (a, b, c) seen from q, divided by 4 pi.
double solid_angle_fraction(const Vec3d& q, const Vec3d& a, const Vec3d& b,
                            const Vec3d& c);

/// Generalized winding number of `triangles` at q, in floating point.
double winding_number(const Vec3d& q, std::span<const Triangle3<double>> triangles);

/// Inside/outside oracle for a fixed triangle soup: the winding number away
/// from the surface, exact ray parity within `guard` of it.
class SideOracle {
 public:
  SideOracle(std::vector<RTriangle> triangles, double guard);

  double winding(const Vec3d& q) const;
  /// Unsigned distance from q to the soup (floating point).
  double distance(const Vec3d& q) const;
  /// True when the point counts as inside (winding > 0.5). A point exactly
  /// on the soup is evaluated a short step along `nudge` when given.
  bool inside(const RPoint& p, const Vec3d* nudge = nullptr) const;
  bool on_surface(const RPoint& p) const;

  std::span<const RTriangle> triangles() const { return exact_; }
  const AabbTree& tree() const { return tree_; }

 private:
  std::vector<RTriangle> exact_;
  std::vector<Triangle3<double>> approx_;
  AabbTree tree_;
  double guard_;
};

}  // namespace miter
