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

#include "miter/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "miter/error.hpp"
#include "miter/intersect.hpp"

namespace miter {

namespace {

using HalfEdge = std::pair<int, int>;

bool triangle_degenerate(const WeldedMesh& mesh, const TriIndex& f) {
  if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0]) return true;
  return is_degenerate(
      RTriangle{mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]});
}

// Rotation of f starting at its smallest index.
TriIndex canonical_rotation(const TriIndex& f) {
  int k = 0;
  if (f[1] < f[k]) k = 1;
  if (f[2] < f[k]) k = 2;
  return {f[k], f[(k + 1) % 3], f[(k + 2) % 3]};
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// True when some point of the open segment (a, b) lies in the relative
// interior of triangle t.
bool segment_enters_interior(const RPoint& a, const RPoint& b,
                             const RTriangle& t) {
  const RPoint n = triangle_normal(t);
  if (is_zero(n)) return false;
  const Rational sa = n.dot(a - t[0]);
  const Rational sb = n.dot(b - t[0]);
  const int axis = dominant_axis(n);
  const RPoint2 p0 = project(t[0], axis), p1 = project(t[1], axis),
                p2 = project(t[2], axis);
  const int o = orient2d(p0, p1, p2);
  auto strictly_inside = [&](const RPoint& q) {
    const RPoint2 q2 = project(q, axis);
    return orient2d(p0, p1, q2) * o > 0 && orient2d(p1, p2, q2) * o > 0 &&
           orient2d(p2, p0, q2) * o > 0;
  };
  if (sgn(sa) != 0 || sgn(sb) != 0) {
    if (sgn(sa) * sgn(sb) >= 0) return false;
    const Rational s = sa / (sa - sb);
    return strictly_inside(a + (b - a) * s);
  }
  // Coplanar: split the segment where it crosses the edge lines and test
  // the middle of every piece.
  const RPoint2 a2 = project(a, axis), b2 = project(b, axis);
  std::vector<Rational> cuts = {Rational(0), Rational(1)};
  const std::array<RPoint2, 3> q = {p0, p1, p2};
  for (int k = 0; k < 3; ++k) {
    const RPoint2& e0 = q[k];
    const RPoint2& e1 = q[(k + 1) % 3];
    const Rational da = orient2d_value(e0, e1, a2);
    const Rational db = orient2d_value(e0, e1, b2);
    if (da == db) continue;
    const Rational s = da / (da - db);
    if (sgn(s) > 0 && s < 1) cuts.push_back(s);
  }
  std::sort(cuts.begin(), cuts.end());
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] == cuts[i + 1]) continue;
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    if (strictly_inside(a + (b - a) * mid)) return true;
  }
  return false;
}

}  // namespace

WeldedMesh weld(const std::vector<ClassifiedTriangle>& soup, bool flip) {
  WeldedMesh mesh;
  std::map<RPoint, int, RPointLess> ids;
  struct Copies {
    size_t first;
    int same = 0, opposite = 0;
  };
  std::map<TriIndex, Copies> seen;
  std::vector<TriIndex> tris;
  std::vector<int> source;
  for (const ClassifiedTriangle& t : soup) {
    TriIndex f;
    for (int k = 0; k < 3; ++k) {
      auto [it, inserted] =
          ids.emplace(t.triangle[k], static_cast<int>(mesh.vertices.size()));
      if (inserted) mesh.vertices.push_back(t.triangle[k]);
      f[k] = it->second;
    }
    if (flip) std::swap(f[1], f[2]);
    TriIndex key = f;
    std::sort(key.begin(), key.end());
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, Copies{tris.size(), 1, 0});
      tris.push_back(f);
      source.push_back(t.polyhedron);
      continue;
    }
    Copies& c = it->second;
    if (canonical_rotation(f) == canonical_rotation(tris[c.first])) ++c.same;
    else ++c.opposite;
  }
  for (const auto& [key, c] : seen) {
    if (c.opposite > c.same) std::swap(tris[c.first][1], tris[c.first][2]);
  }
  mesh.triangles = std::move(tris);
  mesh.source = std::move(source);
  return mesh;
}

WeldedMesh weld(const TriangleSoup& input) {
  WeldedMesh mesh;
  std::map<RPoint, int, RPointLess> ids;
  std::vector<int> remap(input.vertices.size());
  for (size_t v = 0; v < input.vertices.size(); ++v) {
    auto [it, inserted] =
        ids.emplace(input.vertices[v], static_cast<int>(mesh.vertices.size()));
    if (inserted) mesh.vertices.push_back(input.vertices[v]);
    remap[v] = it->second;
  }
  for (const TriIndex& f : input.triangles) {
    mesh.triangles.push_back({remap[f[0]], remap[f[1]], remap[f[2]]});
    mesh.source.push_back(-1);
  }
  return mesh;
}

std::vector<std::vector<int>> boundary_loops(const WeldedMesh& mesh) {
  std::map<HalfEdge, int> count;
  for (const TriIndex& f : mesh.triangles) {
    if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0]) continue;
    for (int k = 0; k < 3; ++k) ++count[{f[k], f[(k + 1) % 3]}];
  }
  std::map<int, std::vector<int>> out;
  for (const auto& [e, n] : count) {
    auto rev = count.find({e.second, e.first});
    const int excess = n - (rev == count.end() ? 0 : rev->second);
    for (int i = 0; i < excess; ++i) out[e.first].push_back(e.second);
  }
  for (auto& [v, targets] : out) std::sort(targets.rbegin(), targets.rend());

  std::vector<std::vector<int>> loops;
  // Where several boundary half-edges leave a vertex, continue in line with
  // the incoming edge if possible so slits come out as their own loops.
  auto take = [&](int prev, int v, int& next) {
    auto it = out.find(v);
    if (it == out.end() || it->second.empty()) return false;
    auto& targets = it->second;
    size_t pick = targets.size() - 1;
    if (prev >= 0 && targets.size() > 1) {
      const RPoint dir = mesh.vertices[v] - mesh.vertices[prev];
      for (size_t i = targets.size(); i-- > 0;) {
        if (is_zero(dir.cross(mesh.vertices[targets[i]] - mesh.vertices[v]))) {
          pick = i;
          break;
        }
      }
    }
    next = targets[pick];
    targets.erase(targets.begin() + static_cast<long>(pick));
    return true;
  };
  for (auto& [start, targets] : out) {
    while (!targets.empty()) {
      std::vector<int> path = {start};
      std::map<int, size_t> pos = {{start, 0}};
      int cur = start, next;
      while (take(path.size() > 1 ? path[path.size() - 2] : -1, cur, next)) {
        auto p = pos.find(next);
        if (p == pos.end()) {
          pos[next] = path.size();
          path.push_back(next);
          cur = next;
          continue;
        }
        const size_t j = p->second;
        loops.emplace_back(path.begin() + j, path.end());
        for (size_t k = j + 1; k < path.size(); ++k) pos.erase(path[k]);
        path.resize(j + 1);
        cur = next;
      }
    }
  }
  return loops;
}

HoleReport fill_zero_area_holes(WeldedMesh& mesh) {
  HoleReport report;
  std::vector<Box> boxes;
  for (size_t t = 0; t < mesh.triangles.size(); ++t)
    boxes.push_back(Box::of(mesh.triangle(t)));
  const AabbTree tree(std::move(boxes));
  const size_t original = mesh.triangles.size();

  for (std::vector<int> loop : boundary_loops(mesh)) {
    const RPoint& p0 = mesh.vertices[loop[0]];
    const RPoint d = mesh.vertices[loop[1]] - p0;
    bool collinear = true;
    for (size_t k = 2; k < loop.size() && collinear; ++k)
      collinear = is_zero(d.cross(mesh.vertices[loop[k]] - p0));
    if (!collinear || loop.size() < 3) {
      ++report.open_loops;
      continue;
    }
    auto edge_ok = [&](int a, int b) {
      const RPoint& pa = mesh.vertices[a];
      const RPoint& pb = mesh.vertices[b];
      Box probe = Box::of(std::array<RPoint, 2>{pa, pb});
      bool ok = true;
      tree.query(probe, [&](int t) {
        if (ok && static_cast<size_t>(t) < original &&
            segment_enters_interior(pa, pb, mesh.triangle(t)))
          ok = false;
      });
      return ok;
    };
    bool closed = true;
    while (loop.size() >= 3) {
      bool cut = false;
      const size_t n = loop.size();
      for (size_t i = 0; i < n && !cut; ++i) {
        const int prev = loop[(i + n - 1) % n];
        const int next = loop[(i + 1) % n];
        if (n > 3 && !edge_ok(prev, next)) continue;
        mesh.triangles.push_back({next, loop[i], prev});
        mesh.source.push_back(-1);
        ++report.added_triangles;
        loop.erase(loop.begin() + static_cast<long>(i));
        cut = true;
      }
      if (!cut) {
        closed = false;
        break;
      }
    }
    if (closed) ++report.filled_loops;
    else ++report.open_loops;
  }
  return report;
}

int eliminate_degenerates(WeldedMesh& mesh) {
  int removed = 0;
  const size_t limit = mesh.triangles.size() + 16;
  for (size_t round = 0;; ++round) {
    std::vector<size_t> degenerate;
    for (size_t t = 0; t < mesh.triangles.size(); ++t)
      if (triangle_degenerate(mesh, mesh.triangles[t])) degenerate.push_back(t);
    if (degenerate.empty()) return removed;
    if (round > limit)
      throw Error(ErrorKind::kGeometry,
                  std::to_string(degenerate.size()) +
                      " zero-area triangles could not be removed");

    std::map<HalfEdge, std::vector<size_t>> owner;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
      const TriIndex& f = mesh.triangles[t];
      for (int k = 0; k < 3; ++k) owner[{f[k], f[(k + 1) % 3]}].push_back(t);
    }
    std::vector<char> touched(mesh.triangles.size(), 0), drop(mesh.triangles.size(), 0);
    std::vector<TriIndex> added;
    std::vector<int> added_source;
    bool progress = false;
    for (size_t t : degenerate) {
      if (touched[t]) continue;
      const TriIndex f = mesh.triangles[t];
      if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0]) {
        touched[t] = drop[t] = 1;
        progress = true;
        continue;
      }
      // The vertex strictly inside the segment of the other two.
      int k = -1;
      for (int i = 0; i < 3; ++i) {
        if (point_on_segment(mesh.vertices[f[i]], mesh.vertices[f[(i + 1) % 3]],
                             mesh.vertices[f[(i + 2) % 3]])) {
          k = i;
          break;
        }
      }
      if (k < 0) continue;
      const int m = f[k], u = f[(k + 1) % 3], v = f[(k + 2) % 3];
      auto it = owner.find({v, u});
      if (it == owner.end()) continue;
      size_t nb = SIZE_MAX;
      for (size_t c : it->second) {
        if (c == t || touched[c]) continue;
        if (!triangle_degenerate(mesh, mesh.triangles[c])) {
          nb = c;
          break;
        }
        if (nb == SIZE_MAX) nb = c;
      }
      if (nb == SIZE_MAX) continue;
      const TriIndex g = mesh.triangles[nb];
      int j = 0;
      while (g[j] != v) ++j;
      const int x = g[(j + 2) % 3];
      added.push_back({v, m, x});
      added.push_back({m, u, x});
      added_source.push_back(mesh.source[nb]);
      added_source.push_back(mesh.source[nb]);
      touched[t] = touched[nb] = 1;
      drop[t] = drop[nb] = 1;
      progress = true;
    }
    if (!progress)
      throw Error(ErrorKind::kGeometry,
                  std::to_string(degenerate.size()) +
                      " zero-area triangles have no usable neighbor");
    std::vector<TriIndex> tris;
    std::vector<int> source;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
      if (drop[t]) continue;
      tris.push_back(mesh.triangles[t]);
      source.push_back(mesh.source[t]);
    }
    for (size_t i = 0; i < added.size(); ++i) {
      tris.push_back(added[i]);
      source.push_back(added_source[i]);
    }
    for (size_t t : degenerate)
      if (drop[t]) ++removed;
    mesh.triangles = std::move(tris);
    mesh.source = std::move(source);
  }
}

long count_self_intersections(const std::vector<RPoint>& vertices,
                              const std::vector<TriIndex>& triangles) {
  std::vector<Box> boxes;
  std::vector<char> skip(triangles.size(), 0);
  for (size_t t = 0; t < triangles.size(); ++t) {
    const TriIndex& f = triangles[t];
    const RTriangle tri{vertices[f[0]], vertices[f[1]], vertices[f[2]]};
    boxes.push_back(Box::of(tri));
    skip[t] = f[0] == f[1] || f[1] == f[2] || f[2] == f[0] || is_degenerate(tri);
  }
  const AabbTree tree(boxes);
  long count = 0;
  for (size_t i = 0; i < triangles.size(); ++i) {
    if (skip[i]) continue;
    const TriIndex& fi = triangles[i];
    const RTriangle ti{vertices[fi[0]], vertices[fi[1]], vertices[fi[2]]};
    tree.query(boxes[i], [&](int jj) {
      const size_t j = static_cast<size_t>(jj);
      if (j <= i || skip[j]) return;
      const TriIndex& fj = triangles[j];
      std::vector<int> shared;
      for (int a : fi)
        for (int b : fj)
          if (a == b) shared.push_back(a);
      const RTriangle tj{vertices[fj[0]], vertices[fj[1]], vertices[fj[2]]};
      const TriTriIntersection r = tri_tri_intersection(ti, tj);
      bool bad = false;
      switch (shared.size()) {
        case 0:
          bad = r.kind != IntersectionKind::kEmpty;
          break;
        case 1:
          bad = !(r.kind == IntersectionKind::kPoint &&
                  r.points[0] == vertices[shared[0]]);
          break;
        case 2: {
          const RPoint& a = vertices[shared[0]];
          const RPoint& b = vertices[shared[1]];
          bad = !(r.kind == IntersectionKind::kSegment &&
                  ((r.points[0] == a && r.points[1] == b) ||
                   (r.points[0] == b && r.points[1] == a)));
          break;
        }
        default:
          bad = true;
      }
      if (bad) ++count;
    });
  }
  return count;
}

ValidityReport validate_mesh(const WeldedMesh& mesh) {
  ValidityReport report;
  report.vertices = static_cast<int>(mesh.vertices.size());
  report.triangles = static_cast<int>(mesh.triangles.size());
  std::map<HalfEdge, std::vector<std::pair<size_t, bool>>> edges;
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const TriIndex& f = mesh.triangles[t];
    if (triangle_degenerate(mesh, f)) ++report.zero_area;
    for (int k = 0; k < 3; ++k) {
      const int a = f[k], b = f[(k + 1) % 3];
      if (a == b) continue;
      edges[{std::min(a, b), std::max(a, b)}].push_back({t, a < b});
    }
  }
  report.orientation_consistent = true;
  UnionFind uf(mesh.triangles.size());
  for (const auto& [e, users] : edges) {
    if (users.size() == 1) ++report.boundary_edges;
    if (users.size() > 2) ++report.nonmanifold_edges;
    if (users.size() == 2 && users[0].second == users[1].second)
      report.orientation_consistent = false;
    for (size_t i = 1; i < users.size(); ++i)
      uf.unite(static_cast<int>(users[0].first), static_cast<int>(users[i].first));
  }
  report.manifold = report.nonmanifold_edges == 0;
  report.watertight = !mesh.triangles.empty() && report.boundary_edges == 0 &&
                      report.manifold && report.orientation_consistent;
  report.self_intersections = count_self_intersections(mesh.vertices, mesh.triangles);

  // Euler characteristic per component.
  std::map<int, int> component_of_root;
  for (size_t t = 0; t < mesh.triangles.size(); ++t)
    component_of_root.emplace(uf.find(static_cast<int>(t)),
                              static_cast<int>(component_of_root.size()));
  report.components = static_cast<int>(component_of_root.size());
  std::vector<std::set<int>> verts(report.components);
  std::vector<long> faces(report.components, 0), edge_count(report.components, 0);
  std::vector<char> closed(report.components, 1);
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const int c = component_of_root[uf.find(static_cast<int>(t))];
    ++faces[c];
    for (int v : mesh.triangles[t]) verts[c].insert(v);
  }
  for (const auto& [e, users] : edges) {
    const int c = component_of_root[uf.find(static_cast<int>(users[0].first))];
    ++edge_count[c];
    if (users.size() != 2) closed[c] = 0;
  }
  for (int c = 0; c < report.components; ++c) {
    const long chi = static_cast<long>(verts[c].size()) - edge_count[c] + faces[c];
    report.genus.push_back(closed[c] && chi % 2 == 0 ? static_cast<int>((2 - chi) / 2)
                                                     : -1);
  }
  return report;
}

FinalizeResult finalize(WeldedMesh& mesh) {
  FinalizeResult result;
  result.holes = fill_zero_area_holes(mesh);
  result.removed_degenerates = eliminate_degenerates(mesh);
  result.report = validate_mesh(mesh);
  return result;
}

std::vector<RPoint> quantize(const std::vector<RPoint>& vertices, int digits) {
  std::vector<RPoint> out;
  out.reserve(vertices.size());
  char buf[64];
  for (const RPoint& p : vertices) {
    RPoint q;
    for (int i = 0; i < 3; ++i) {
      std::snprintf(buf, sizeof(buf), "%.*g", digits, nearest_double(p[i]));
      q[i] = parse_decimal(buf);
    }
    out.push_back(q);
  }
  return out;
}

long quantized_self_intersections(const WeldedMesh& mesh, int digits) {
  return count_self_intersections(quantize(mesh.vertices, digits), mesh.triangles);
}

}  // namespace miter
