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

#include "miter/mesh.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "miter/error.hpp"

namespace miter {

void TriangleSoup::set_uniform_distance(const Rational& d) {
  per_face_distance.assign(triangles.size(), d);
}

void validate(const TriangleSoup& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    for (int v : mesh.triangles[t]) {
      if (v < 0 || v >= n) {
        throw Error(ErrorKind::kIndexOutOfRange,
                    "triangle " + std::to_string(t) + " references vertex " +
                        std::to_string(v) + " of " + std::to_string(n));
      }
    }
  }
  if (mesh.per_face_distance.size() != mesh.triangles.size()) {
    throw Error(ErrorKind::kConfig,
                "expected " + std::to_string(mesh.triangles.size()) +
                    " per-face distances, got " +
                    std::to_string(mesh.per_face_distance.size()));
  }
  for (const Rational& d : mesh.per_face_distance) {
    if (sgn(d) < 0)
      throw Error(ErrorKind::kConfig, "offset distances must be non-negative");
  }
  if (mesh.direction != 1 && mesh.direction != -1)
    throw Error(ErrorKind::kConfig, "direction must be +1 or -1");
}

std::vector<int> degenerate_triangles(const TriangleSoup& mesh) {
  std::vector<int> out;
  for (size_t t = 0; t < mesh.triangles.size(); ++t)
    if (is_degenerate(mesh.triangle(static_cast<int>(t))))
      out.push_back(static_cast<int>(t));
  return out;
}

BBoxInfo bbox_diagonal(const TriangleSoup& mesh) {
  if (mesh.vertices.empty())
    throw Error(ErrorKind::kEmptyInput, "mesh has no vertices");
  RPoint lo = mesh.vertices[0], hi = mesh.vertices[0];
  for (const RPoint& p : mesh.vertices) {
    for (int i = 0; i < 3; ++i) {
      if (p[i] < lo[i]) lo[i] = p[i];
      if (p[i] > hi[i]) hi[i] = p[i];
    }
  }
  BBoxInfo info;
  info.min = to_double(lo);
  info.max = to_double(hi);
  info.diagonal = std::sqrt((hi - lo).squaredNorm().get_d());
  if (!(info.diagonal > 0))
    throw Error(ErrorKind::kEmptyInput, "mesh bounding box has zero diagonal");
  return info;
}

MeshIndex::MeshIndex(const TriangleSoup& mesh) : mesh_(&mesh) {
  std::map<RPoint, int, RPointLess> lookup;
  vertex_position_.resize(mesh.vertices.size());
  for (size_t v = 0; v < mesh.vertices.size(); ++v) {
    auto [it, inserted] =
        lookup.emplace(mesh.vertices[v], static_cast<int>(positions_.size()));
    if (inserted) positions_.push_back(mesh.vertices[v]);
    vertex_position_[v] = it->second;
  }
  incident_.resize(positions_.size());
  corners_.resize(mesh.triangles.size());
  degenerate_.resize(mesh.triangles.size());
  std::map<std::pair<int, int>, std::vector<int>> edge_map;
  std::vector<Box> boxes;
  boxes.reserve(mesh.triangles.size());
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const int ti = static_cast<int>(t);
    const RTriangle tri = mesh.triangle(ti);
    boxes.push_back(Box::of(tri));
    for (int k = 0; k < 3; ++k)
      corners_[t][k] = vertex_position_[mesh.triangles[t][k]];
    degenerate_[t] = is_degenerate(tri);
    if (degenerate_[t]) continue;
    for (int k = 0; k < 3; ++k) {
      incident_[corners_[t][k]].push_back(ti);
      int a = corners_[t][k], b = corners_[t][(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edge_map[{a, b}].push_back(ti);
    }
  }
  edges_.reserve(edge_map.size());
  for (auto& [key, tris] : edge_map)
    edges_.push_back(Edge{key.first, key.second, std::move(tris)});
  tree_ = AabbTree(std::move(boxes));
}

bool MeshIndex::is_input_position(const RPoint& p) const {
  // Positions are few enough that a tree probe plus exact compare is cheap.
  bool found = false;
  Box probe;
  probe.expand(p);
  tree_.query(probe, [&](int t) {
    if (found) return;
    for (int k = 0; k < 3; ++k)
      if (positions_[corners_[t][k]] == p) found = true;
  });
  return found;
}

bool MeshIndex::on_input_surface(const RPoint& p) const {
  bool found = false;
  Box probe;
  probe.expand(p);
  tree_.query(probe, [&](int t) {
    if (!found && point_in_triangle(p, mesh_->triangle(t))) found = true;
  });
  return found;
}

bool star_is_simple_disk(const MeshIndex& index, int pid) {
  std::map<std::pair<int, int>, int> counts;
  for (int t : index.incident(pid)) {
    const TriIndex& c = index.corners(t);
    for (int k = 0; k < 3; ++k) {
      int a = c[k], b = c[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++counts[{a, b}];
    }
  }
  std::map<int, std::vector<int>> adjacency;
  int boundary_edges = 0;
  for (const auto& [e, n] : counts) {
    if (n > 2) return false;
    if (n % 2 == 1) {
      adjacency[e.first].push_back(e.second);
      adjacency[e.second].push_back(e.first);
      ++boundary_edges;
    }
  }
  if (boundary_edges < 3) return false;
  for (const auto& [v, nbrs] : adjacency)
    if (nbrs.size() != 2) return false;
  // Walk the cycle from an arbitrary vertex; it must cover every edge.
  const int start = adjacency.begin()->first;
  int prev = -1, cur = start, steps = 0;
  do {
    const auto& nbrs = adjacency[cur];
    const int next = nbrs[0] != prev ? nbrs[0] : nbrs[1];
    prev = cur;
    cur = next;
    ++steps;
  } while (cur != start && steps <= boundary_edges);
  return cur == start && steps == boundary_edges;
}

LocalNeighborhood local_neighborhood(const MeshIndex& index, int vertex,
                                     const Rational& epsilon) {
  const TriangleSoup& mesh = index.mesh();
  if (vertex < 0 || vertex >= static_cast<int>(mesh.num_vertices()))
    throw Error(ErrorKind::kIndexOutOfRange,
                "vertex " + std::to_string(vertex) + " out of range");
  const int pid = index.position_of(vertex);
  LocalNeighborhood out;
  out.center = vertex;
  if (star_is_simple_disk(index, pid)) {
    auto inc = index.incident(pid);
    out.triangles.assign(inc.begin(), inc.end());
    std::sort(out.triangles.begin(), out.triangles.end());
    out.kind = NeighborhoodKind::kSimpleDisk;
    return out;
  }
  out.kind = NeighborhoodKind::kEpsilonGathered;
  const RPoint& p = index.position(pid);
  const Rational eps2 = epsilon * epsilon;
  Box probe;
  probe.expand(p);
  probe = probe.inflated(round_up(epsilon));
  index.tree().query(probe, [&](int t) {
    if (index.degenerate(t)) return;
    if (squared_distance(p, mesh.triangle(t)) <= eps2)
      out.triangles.push_back(t);
  });
  std::sort(out.triangles.begin(), out.triangles.end());
  if (out.triangles.empty())
    throw Error(ErrorKind::kGeometry,
                "vertex " + std::to_string(vertex) + " has an empty neighborhood");
  return out;
}

}  // namespace miter
