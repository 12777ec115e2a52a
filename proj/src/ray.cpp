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

#include "miter/ray.hpp"

#include <algorithm>

namespace miter {

namespace {

// 0 miss, 1 hit, 2 degenerate.
int intersect(const RPoint& o, const RPoint& d, const RTriangle& tri,
              Rational& t) {
  const RPoint n = triangle_normal(tri);
  if (is_zero(n)) return 0;
  const Rational denom = n.dot(d);
  const Rational num = n.dot(tri[0] - o);
  if (sgn(denom) == 0) {
    if (sgn(num) != 0) return 0;
    // Ray inside the plane: degenerate if it meets the triangle at all.
    const int axis = dominant_axis(n);
    const RPoint2 o2 = project(o, axis);
    const RPoint2 d2 = project(d, axis);
    std::array<RPoint2, 3> t2 = {project(tri[0], axis), project(tri[1], axis),
                                 project(tri[2], axis)};
    if (point_in_triangle_2d(o2, t2[0], t2[1], t2[2])) return 2;
    for (int k = 0; k < 3; ++k) {
      const RPoint2& a = t2[k];
      const RPoint2& b = t2[(k + 1) % 3];
      // Does the ray o2 + s d2 (s >= 0) reach segment ab?
      const Rational oa = orient2d_value(o2, RPoint2(o2 + d2), a);
      const Rational ob = orient2d_value(o2, RPoint2(o2 + d2), b);
      if (sgn(oa) * sgn(ob) > 0) continue;
      const RPoint2 e = b - a;
      const Rational den = d2.x() * e.y() - d2.y() * e.x();
      if (sgn(den) == 0) {
        if (sgn(d2.dot(a - o2)) >= 0 || sgn(d2.dot(b - o2)) >= 0) return 2;
        continue;
      }
      const RPoint2 w = a - o2;
      const Rational s = (w.x() * e.y() - w.y() * e.x()) / den;
      if (sgn(s) >= 0) return 2;
    }
    return 0;
  }
  t = num / denom;
  if (sgn(t) < 0) return 0;
  const RPoint p = o + d * t;
  const int axis = dominant_axis(n);
  const RPoint2 p2 = project(p, axis);
  const RPoint2 a = project(tri[0], axis), b = project(tri[1], axis),
                c = project(tri[2], axis);
  const int s = orient2d(a, b, c);
  const int s0 = orient2d(a, b, p2) * s;
  const int s1 = orient2d(b, c, p2) * s;
  const int s2 = orient2d(c, a, p2) * s;
  if (s0 < 0 || s1 < 0 || s2 < 0) return 0;
  if (s0 == 0 || s1 == 0 || s2 == 0 || sgn(t) == 0) return 2;
  return 1;
}

void visit(const RPoint& o, const RPoint& d, std::span<const RTriangle> tris,
           std::span<const int> exclude, int id, RayHit& hit) {
  if (std::find(exclude.begin(), exclude.end(), id) != exclude.end()) return;
  Rational t;
  const int r = intersect(o, d, tris[id], t);
  if (r == 2) hit.status = RayStatus::kDegenerate;
  if (r != 1) return;
  ++hit.count;
  if (hit.primitive < 0 || t < hit.t || (t == hit.t && id < hit.primitive)) {
    hit.primitive = id;
    hit.t = t;
  }
}

void finish(RayHit& hit) {
  if (hit.status != RayStatus::kDegenerate)
    hit.status = hit.primitive >= 0 ? RayStatus::kHit : RayStatus::kMiss;
}

}  // namespace

AabbTree build_triangle_tree(std::span<const RTriangle> triangles) {
  std::vector<Box> boxes;
  boxes.reserve(triangles.size());
  for (const RTriangle& t : triangles) boxes.push_back(Box::of(t));
  return AabbTree(std::move(boxes));
}

RayHit ray_first_hit(const RPoint& origin, const RPoint& direction,
                     std::span<const RTriangle> triangles, const AabbTree& tree,
                     std::span<const int> exclude) {
  RayHit hit;
  tree.query_ray(to_double(origin), to_double(direction), [&](int id) {
    visit(origin, direction, triangles, exclude, id, hit);
  });
  finish(hit);
  return hit;
}

RayHit ray_first_hit_brute(const RPoint& origin, const RPoint& direction,
                           std::span<const RTriangle> triangles,
                           std::span<const int> exclude) {
  RayHit hit;
  for (size_t i = 0; i < triangles.size(); ++i)
    visit(origin, direction, triangles, exclude, static_cast<int>(i), hit);
  finish(hit);
  return hit;
}

int ray_parity(const RPoint& origin, std::span<const RTriangle> triangles,
               const AabbTree& tree, int attempts) {
  // Fixed, irregular directions so results are reproducible.
  static const int kDirs[8][3] = {{7, 3, 2},   {-5, 11, 3}, {2, -9, 13},
                                  {-3, -4, 17}, {19, 7, -5}, {-11, 2, -7},
                                  {3, 23, -13}, {-17, -6, 5}};
  for (int i = 0; i < attempts && i < 8; ++i) {
    const RPoint dir(kDirs[i][0], kDirs[i][1], kDirs[i][2]);
    const RayHit hit = ray_first_hit(origin, dir, triangles, tree);
    if (hit.status != RayStatus::kDegenerate) return hit.count % 2;
  }
  return -1;
}

}  // namespace miter
