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

#include "miter/convex_hull.hpp"

#include <map>

namespace miter {

bool ConvexPolyhedron::contains(const RPoint& p) const {
  if (dimension < 3) return false;
  for (const RPlane& plane : planes)
    if (plane.side(p) > 0) return false;
  return true;
}

bool ConvexPolyhedron::strictly_contains(const RPoint& p) const {
  if (dimension < 3) return false;
  for (const RPlane& plane : planes)
    if (plane.side(p) >= 0) return false;
  return true;
}

namespace {

struct Face {
  TriIndex v;
  RPlane plane;
  bool alive = true;
};

Face make_face(const std::vector<RPoint>& pts, int a, int b, int c) {
  return {{a, b, c}, plane_of(pts[a], pts[b], pts[c]), true};
}

}  // namespace

ConvexPolyhedron convex_hull(std::span<const RPoint> points) {
  ConvexPolyhedron hull;
  // Deduplicate, remembering where each distinct point came from.
  std::vector<RPoint> pts;
  std::vector<int> origin;
  {
    std::map<RPoint, int, RPointLess> seen;
    for (size_t i = 0; i < points.size(); ++i) {
      if (seen.emplace(points[i], static_cast<int>(pts.size())).second) {
        pts.push_back(points[i]);
        origin.push_back(static_cast<int>(i));
      }
    }
  }
  if (pts.empty()) return hull;
  for (const RPoint& p : pts) hull.box.expand(p);

  const int n = static_cast<int>(pts.size());
  int i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i)
    if (pts[i] != pts[0]) i1 = i;
  if (i1 >= 0) {
    for (int i = 1; i < n && i2 < 0; ++i) {
      if (!is_zero(triangle_normal(pts[0], pts[i1], pts[i]))) i2 = i;
    }
  }
  if (i2 >= 0) {
    for (int i = 1; i < n && i3 < 0; ++i)
      if (orient3d(pts[0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
  }

  if (i3 < 0) {
    hull.dimension = i1 < 0 ? 0 : (i2 < 0 ? 1 : 2);
    hull.vertices = pts;
    hull.input_index = origin;
    return hull;
  }
  hull.dimension = 3;

  std::vector<Face> faces;
  // Orient the seed tetrahedron so every face looks away from the fourth.
  if (orient3d(pts[0], pts[i1], pts[i2], pts[i3]) > 0) std::swap(i1, i2);
  faces.push_back(make_face(pts, 0, i1, i2));
  faces.push_back(make_face(pts, 0, i3, i1));
  faces.push_back(make_face(pts, i1, i3, i2));
  faces.push_back(make_face(pts, 0, i2, i3));

  std::vector<bool> used(n, false);
  used[0] = used[i1] = used[i2] = used[i3] = true;

  for (int p = 0; p < n; ++p) {
    if (used[p]) continue;
    std::vector<int> visible;
    for (size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && faces[f].plane.side(pts[p]) > 0)
        visible.push_back(static_cast<int>(f));
    if (visible.empty()) continue;
    used[p] = true;

    std::map<std::pair<int, int>, int> edge_face;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      for (int k = 0; k < 3; ++k)
        edge_face[{faces[f].v[k], faces[f].v[(k + 1) % 3]}] =
            static_cast<int>(f);
    }
    std::vector<bool> is_visible(faces.size(), false);
    for (int f : visible) is_visible[f] = true;

    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      for (int k = 0; k < 3; ++k) {
        const int a = faces[f].v[k], b = faces[f].v[(k + 1) % 3];
        const int other = edge_face.at({b, a});
        if (!is_visible[other]) horizon.emplace_back(a, b);
      }
    }
    for (int f : visible) faces[f].alive = false;
    for (auto [a, b] : horizon) faces.push_back(make_face(pts, a, b, p));
  }

  // Compact.
  std::vector<int> remap(n, -1);
  for (const Face& f : faces) {
    if (!f.alive) continue;
    TriIndex t;
    for (int k = 0; k < 3; ++k) {
      int& r = remap[f.v[k]];
      if (r < 0) {
        r = static_cast<int>(hull.vertices.size());
        hull.vertices.push_back(pts[f.v[k]]);
        hull.input_index.push_back(origin[f.v[k]]);
      }
      t[k] = r;
    }
    hull.facets.push_back(t);
    hull.planes.push_back(f.plane);
  }
  return hull;
}

}  // namespace miter
