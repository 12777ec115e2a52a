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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "miter/aabb.hpp"
#include "miter/predicates.hpp"
#include "miter/rational.hpp"

namespace miter {

using TriIndex = std::array<int, 3>;

/// Raw input mesh. Vertices are exact rationals, parsed straight from the
/// file text; nothing is merged or repaired on load.
struct TriangleSoup {
  std::vector<RPoint> vertices;
  std::vector<TriIndex> triangles;
  /// Offset distance d_i >= 0 per triangle, in model units.
  std::vector<Rational> per_face_distance;
  /// +1 offsets outward, -1 inward.
  int direction = 1;

  size_t num_vertices() const { return vertices.size(); }
  size_t num_triangles() const { return triangles.size(); }
  bool empty() const { return triangles.empty(); }

  RTriangle triangle(int t) const {
    const TriIndex& f = triangles[t];
    return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
  }
  Triangle3<double> triangle_d(int t) const {
    const TriIndex& f = triangles[t];
    return {to_double(vertices[f[0]]), to_double(vertices[f[1]]),
            to_double(vertices[f[2]])};
  }

  /// Assigns the same distance to every triangle.
  void set_uniform_distance(const Rational& d);
};

/// Throws Error on out-of-range indices, size mismatches, negative
/// distances, or an invalid direction.
void validate(const TriangleSoup& mesh);

/// Zero-area triangles, detected exactly.
std::vector<int> degenerate_triangles(const TriangleSoup& mesh);

struct BBoxInfo {
  Vec3d min = Vec3d::Zero();
  Vec3d max = Vec3d::Zero();
  /// Euclidean length of the box diagonal, l.
  double diagonal = 0.0;
};

/// Throws kEmptyInput for meshes without vertices or with a zero diagonal.
BBoxInfo bbox_diagonal(const TriangleSoup& mesh);

struct Edge {
  int a = 0, b = 0;  // position ids, a < b
  std::vector<int> triangles;
};

/// Adjacency over exact vertex positions. Soup vertices that share
/// coordinates map to one position so STL-style inputs get the same
/// neighborhoods as indexed ones. Degenerate triangles are excluded.
class MeshIndex {
 public:
  explicit MeshIndex(const TriangleSoup& mesh);

  const TriangleSoup& mesh() const { return *mesh_; }
  int num_positions() const { return static_cast<int>(positions_.size()); }
  const RPoint& position(int pid) const { return positions_[pid]; }
  int position_of(int vertex) const { return vertex_position_[vertex]; }
  const TriIndex& corners(int t) const { return corners_[t]; }
  bool degenerate(int t) const { return degenerate_[t]; }
  std::span<const int> incident(int pid) const { return incident_[pid]; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Tree over every input triangle (degenerate ones included).
  const AabbTree& tree() const { return tree_; }
  bool is_input_position(const RPoint& p) const;
  /// Exact test: p lies on some input triangle.
  bool on_input_surface(const RPoint& p) const;

 private:
  const TriangleSoup* mesh_;
  std::vector<RPoint> positions_;
  std::vector<int> vertex_position_;
  std::vector<TriIndex> corners_;
  std::vector<bool> degenerate_;
  std::vector<std::vector<int>> incident_;
  std::vector<Edge> edges_;
  AabbTree tree_;
};

enum class NeighborhoodKind { kSimpleDisk, kEpsilonGathered };

struct LocalNeighborhood {
  int center = -1;  // soup vertex id
  std::vector<int> triangles;
  NeighborhoodKind kind = NeighborhoodKind::kSimpleDisk;
};

/// True when the boundary of the star (edges used an odd number of times)
/// is exactly one closed cycle and no star edge is non-manifold.
bool star_is_simple_disk(const MeshIndex& index, int pid);

/// The incident star when it is a simple disk, otherwise every triangle
/// within `epsilon` of the vertex (exact distance test).
LocalNeighborhood local_neighborhood(const MeshIndex& index, int vertex,
                                     const Rational& epsilon);

// I/O -----------------------------------------------------------------------

enum class MeshFormat { kAuto, kObj, kOff, kStl };

/// Loads OBJ, OFF, or ASCII/binary STL. Distances start at zero.
TriangleSoup load_mesh(const std::string& path,
                       MeshFormat format = MeshFormat::kAuto);
TriangleSoup parse_obj(const std::string& text);
TriangleSoup parse_off(const std::string& text);
TriangleSoup parse_stl(const std::string& bytes);

/// Writes "v x y z" lines at `digits` significant digits.
std::string format_obj(const std::vector<RPoint>& vertices,
                       const std::vector<TriIndex>& triangles, int digits = 17);
/// Exact text form: "v px/qx py/qy pz/qz".
std::string format_rational_obj(const std::vector<RPoint>& vertices,
                                const std::vector<TriIndex>& triangles);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

/// One distance per line; line i binds to triangle i.
std::vector<Rational> load_distances(const std::string& path,
                                     size_t expected_count);

}  // namespace miter
