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

#include "miter/offset_volumes.hpp"

#include "miter/error.hpp"
#include "miter/parallel.hpp"

namespace miter {

bool OffsetVolumeSet::is_input_facet(int p, int f) const {
  const ConvexPolyhedron& poly = polyhedra[p];
  if (poly.source.kind != SourceKind::kTriangle) return false;
  for (int k = 0; k < 3; ++k)
    if (poly.input_index[poly.facets[f][k]] >= 3) return false;
  return true;
}

ConvexPolyhedron build_triangle_polyhedron(
    const MeshIndex& index, int triangle,
    const std::vector<OffsetSolution>& solutions) {
  std::vector<RPoint> pts;
  const TriIndex& c = index.corners(triangle);
  for (int k = 0; k < 3; ++k) pts.push_back(index.position(c[k]));
  for (int k = 0; k < 3; ++k) {
    const OffsetSolution& s = solutions[c[k]];
    bool found = false;
    for (int g = 0; g < s.K(); ++g) {
      if (s.group_contains(g, triangle)) {
        pts.push_back(s.points[g]);
        found = true;
      }
    }
    if (!found)
      throw Error(ErrorKind::kGeometry,
                  "triangle " + std::to_string(triangle) +
                      " is not covered by any offset group of its corner");
  }
  ConvexPolyhedron hull = convex_hull(pts);
  hull.source = {SourceKind::kTriangle, triangle};
  return hull;
}

ConvexPolyhedron build_edge_polyhedron(
    const MeshIndex& index, int edge,
    const std::vector<OffsetSolution>& solutions) {
  const Edge& e = index.edges()[edge];
  std::vector<RPoint> pts = {index.position(e.a), index.position(e.b)};
  for (int pid : {e.a, e.b}) {
    const OffsetSolution& s = solutions[pid];
    for (int g = 0; g < s.K(); ++g) {
      bool qualifies = false;
      for (int t : e.triangles) qualifies = qualifies || s.group_contains(g, t);
      if (qualifies) pts.push_back(s.points[g]);
    }
  }
  ConvexPolyhedron hull = convex_hull(pts);
  hull.source = {SourceKind::kEdge, edge};
  return hull;
}

ConvexPolyhedron build_vertex_polyhedron(const MeshIndex& index, int position,
                                         const OffsetSolution& solution) {
  std::vector<RPoint> pts = {index.position(position)};
  pts.insert(pts.end(), solution.points.begin(), solution.points.end());
  ConvexPolyhedron hull = convex_hull(pts);
  hull.source = {SourceKind::kVertex, position};
  return hull;
}

OffsetVolumeSet build_offset_volumes(
    const MeshIndex& index, const std::vector<OffsetSolution>& solutions,
    int threads) {
  const TriangleSoup& mesh = index.mesh();
  const size_t nt = mesh.num_triangles();
  const size_t ne = index.edges().size();
  const size_t nv = static_cast<size_t>(index.num_positions());
  std::vector<ConvexPolyhedron> all(nt + ne + nv);
  std::vector<char> built(all.size(), 0);
  parallel_for(all.size(), threads, [&](size_t i) {
    if (i < nt) {
      if (index.degenerate(static_cast<int>(i))) return;
      all[i] = build_triangle_polyhedron(index, static_cast<int>(i), solutions);
    } else if (i < nt + ne) {
      all[i] = build_edge_polyhedron(index, static_cast<int>(i - nt), solutions);
    } else {
      const int pid = static_cast<int>(i - nt - ne);
      if (solutions[pid].K() == 0) return;
      all[i] = build_vertex_polyhedron(index, pid, solutions[pid]);
    }
    built[i] = 1;
  });

  OffsetVolumeSet set;
  set.triangle_polyhedron.assign(nt, -1);
  set.edge_polyhedron.assign(ne, -1);
  set.vertex_polyhedron.assign(nv, -1);
  for (size_t i = 0; i < all.size(); ++i) {
    if (i < nt && index.degenerate(static_cast<int>(i))) {
      set.skipped_triangles.push_back(static_cast<int>(i));
      continue;
    }
    if (!built[i]) continue;
    ConvexPolyhedron& p = all[i];
    if (p.dimension < 3) {
      set.degenerate.push_back(p.source);
      continue;
    }
    const int id = static_cast<int>(set.polyhedra.size());
    if (i < nt)
      set.triangle_polyhedron[i] = id;
    else if (i < nt + ne)
      set.edge_polyhedron[i - nt] = id;
    else
      set.vertex_polyhedron[i - nt - ne] = id;
    set.polyhedra.push_back(std::move(p));
  }
  return set;
}

std::string polyhedron_obj(const ConvexPolyhedron& p, int digits) {
  return format_obj(p.vertices, p.facets, digits);
}

}  // namespace miter
