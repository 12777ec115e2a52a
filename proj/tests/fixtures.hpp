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

#include "miter/mesh.hpp"

namespace miter::testing {

/// Axis-aligned box [lo, hi], outward oriented, 12 triangles.
TriangleSoup box(const RPoint& lo, const RPoint& hi);
TriangleSoup unit_cube();
/// Straight extrusion of a simple counter-clockwise polygon between z = 0
/// and z = height. `cap` triangulates the polygon (indices into it).
TriangleSoup extrusion(const std::vector<std::array<Rational, 2>>& polygon,
                       const std::vector<TriIndex>& cap, const Rational& height);
TriangleSoup l_bracket();
/// Right prism over the 3-4-5 triangle, scaled by 1/4.
TriangleSoup prism_345();
TriangleSoup hex_prism();
TriangleSoup octahedron();
TriangleSoup icosahedron();
/// Icosahedron subdivided `levels` times and projected to the unit sphere.
TriangleSoup sphere(int levels);
/// Capped cylinder with `segments` sides.
TriangleSoup cylinder(int segments, double radius, double height);
TriangleSoup torus(int major_segments, int minor_segments, double major, double minor);
/// Two cones joined at their apex: a non-manifold vertex.
TriangleSoup two_cones(int segments);
/// Unit cube without its top face.
TriangleSoup open_cube();
/// Unit square in z = 0 with both orientations present.
TriangleSoup fin();
/// Two unit cubes overlapping by half, as one soup.
TriangleSoup two_cubes();
/// Soup of every fixture above with a short name.
std::vector<std::pair<std::string, TriangleSoup>> corpus();

/// Concatenates soups.
TriangleSoup merge(const std::vector<TriangleSoup>& parts);

}  // namespace miter::testing
