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

#include "miter/predicates.hpp"

#include <cmath>

namespace miter {

int dominant_axis(const RPoint& normal) {
  int axis = 0;
  Rational best = abs(normal[0]);
  for (int i = 1; i < 3; ++i) {
    Rational a = abs(normal[i]);
    if (a > best) {
      best = a;
      axis = i;
    }
  }
  return axis;
}

RPoint RPlane::lift(const RPoint2& q, int axis) const {
  const int u = (axis + 1) % 3;
  const int v = (axis + 2) % 3;
  RPoint p;
  p[u] = q.x();
  p[v] = q.y();
  p[axis] = -(normal[u] * q.x() + normal[v] * q.y() + offset) / normal[axis];
  return p;
}

RPlane plane_of(const RPoint& a, const RPoint& b, const RPoint& c) {
  RPlane plane;
  plane.normal = triangle_normal(a, b, c);
  plane.offset = -plane.normal.dot(a);
  const Vec3d n = to_double(plane.normal);
  const double len = n.norm();
  if (len > 0) {
    plane.unit_normal = n / len;
    plane.unit_offset = -plane.unit_normal.dot(to_double(a));
  }
  return plane;
}

bool point_in_triangle_2d(const RPoint2& p, const RPoint2& a, const RPoint2& b,
                          const RPoint2& c) {
  const int o = orient2d(a, b, c);
  const int s0 = orient2d(a, b, p);
  const int s1 = orient2d(b, c, p);
  const int s2 = orient2d(c, a, p);
  if (o == 0) {
    // Degenerate triangle: fall back to the segments.
    auto on = [](const RPoint2& q, const RPoint2& x, const RPoint2& y) {
      return point_on_segment_2d(q, x, y);
    };
    return on(p, a, b) || on(p, b, c) || on(p, c, a);
  }
  return s0 * o >= 0 && s1 * o >= 0 && s2 * o >= 0;
}

bool point_in_triangle(const RPoint& p, const RTriangle& t) {
  const RPoint n = triangle_normal(t);
  if (is_zero(n)) {
    return point_on_segment(p, t[0], t[1]) || point_on_segment(p, t[1], t[2]) ||
           point_on_segment(p, t[2], t[0]);
  }
  if (sgn(n.dot(p - t[0])) != 0) return false;
  const int axis = dominant_axis(n);
  return point_in_triangle_2d(project(p, axis), project(t[0], axis),
                              project(t[1], axis), project(t[2], axis));
}

bool point_on_segment_2d(const RPoint2& p, const RPoint2& a, const RPoint2& b) {
  if (orient2d(a, b, p) != 0) return false;
  for (int i = 0; i < 2; ++i) {
    const Rational& lo = a[i] < b[i] ? a[i] : b[i];
    const Rational& hi = a[i] < b[i] ? b[i] : a[i];
    if (p[i] < lo || p[i] > hi) return false;
  }
  return true;
}

bool point_on_segment(const RPoint& p, const RPoint& a, const RPoint& b) {
  const RPoint ab = b - a;
  const RPoint ap = p - a;
  if (!is_zero(ab.cross(ap))) return false;
  const Rational t = ap.dot(ab);
  return sgn(t) >= 0 && t <= ab.dot(ab);
}

namespace {

// Closest point on a triangle (Ericson, Real-Time Collision Detection 5.1.5),
// written once for both scalar types.
template <typename Scalar>
Vec3<Scalar> closest_point(const Vec3<Scalar>& p, const Vec3<Scalar>& a,
                           const Vec3<Scalar>& b, const Vec3<Scalar>& c) {
  const Vec3<Scalar> ab = b - a, ac = c - a, ap = p - a;
  const Scalar d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Vec3<Scalar> bp = p - b;
  const Scalar d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const Scalar vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const Scalar v = d1 / (d1 - d3);
    return a + ab * v;
  }
  const Vec3<Scalar> cp = p - c;
  const Scalar d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const Scalar vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const Scalar w = d2 / (d2 - d6);
    return a + ac * w;
  }
  const Scalar va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const Scalar w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + (c - b) * w;
  }
  const Scalar sum = va + vb + vc;
  if (sum == 0) return a;  // degenerate triangle, vertex regions handled above
  const Scalar v = vb / sum;
  const Scalar w = vc / sum;
  return a + ab * v + ac * w;
}

}  // namespace

Rational squared_distance(const RPoint& p, const RTriangle& t) {
  if (is_degenerate(t)) {
    // Closest over the three edges.
    Rational best = -1;
    for (int i = 0; i < 3; ++i) {
      const RPoint& a = t[i];
      const RPoint& b = t[(i + 1) % 3];
      const RPoint ab = b - a;
      Rational d2;
      const Rational len2 = ab.dot(ab);
      if (sgn(len2) == 0) {
        d2 = (p - a).squaredNorm();
      } else {
        Rational s = (p - a).dot(ab) / len2;
        if (s < 0) s = 0;
        if (s > 1) s = 1;
        d2 = (p - (a + ab * s)).squaredNorm();
      }
      if (best < 0 || d2 < best) best = d2;
    }
    return best;
  }
  const RPoint q = closest_point<Rational>(p, t[0], t[1], t[2]);
  return (p - q).squaredNorm();
}

double squared_distance(const Vec3d& p, const Triangle3<double>& t,
                        Vec3d* closest) {
  const Vec3d q = closest_point<double>(p, t[0], t[1], t[2]);
  if (closest) *closest = q;
  return (p - q).squaredNorm();
}

}  // namespace miter
