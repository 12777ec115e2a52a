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

#include "miter/intersect.hpp"

#include <algorithm>

#include "miter/error.hpp"

namespace miter {

namespace {

// Points of `t` on the plane with signs `s`: a point or a segment.
std::vector<RPoint> plane_cut(const RTriangle& t, const std::array<int, 3>& s,
                              const std::array<Rational, 3>& v) {
  std::vector<RPoint> out;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (s[i] == 0) out.push_back(t[i]);
    if (s[i] * s[j] < 0) {
      const Rational w = v[i] / (v[i] - v[j]);
      out.push_back(t[i] + (t[j] - t[i]) * w);
    }
  }
  return out;
}

void order_along(std::vector<RPoint>& pts, const RPoint& dir) {
  std::sort(pts.begin(), pts.end(), [&](const RPoint& a, const RPoint& b) {
    return dir.dot(a) < dir.dot(b);
  });
}

std::vector<RPoint2> ccw(const std::array<RPoint2, 3>& t) {
  std::vector<RPoint2> out(t.begin(), t.end());
  if (orient2d(out[0], out[1], out[2]) < 0) std::swap(out[1], out[2]);
  return out;
}

}  // namespace

std::vector<RPoint2> clip_coplanar(const std::array<RPoint2, 3>& a,
                                   const std::array<RPoint2, 3>& b) {
  std::vector<RPoint2> poly = ccw(a);
  const std::vector<RPoint2> clip = ccw(b);
  for (int e = 0; e < 3 && !poly.empty(); ++e) {
    const RPoint2& c0 = clip[e];
    const RPoint2& c1 = clip[(e + 1) % 3];
    std::vector<RPoint2> next;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
      const RPoint2& s = poly[(i + n - 1) % n];
      const RPoint2& p = poly[i];
      const Rational os = orient2d_value(c0, c1, s);
      const Rational op = orient2d_value(c0, c1, p);
      const bool s_in = sgn(os) >= 0;
      const bool p_in = sgn(op) >= 0;
      if (p_in != s_in && sgn(os) != 0 && sgn(op) != 0)
        next.push_back(s + (p - s) * Rational(os / (os - op)));
      if (p_in) next.push_back(p);
    }
    // Drop repeated vertices.
    std::vector<RPoint2> dedup;
    for (const RPoint2& q : next)
      if (dedup.empty() || dedup.back() != q) dedup.push_back(q);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    poly = std::move(dedup);
  }
  return poly;
}

TriTriIntersection tri_tri_intersection(const RTriangle& a,
                                        const RTriangle& b) {
  if (is_degenerate(a) || is_degenerate(b))
    throw Error(ErrorKind::kGeometry, "degenerate triangle in intersection");
  TriTriIntersection result;
  const RPoint na = triangle_normal(a);
  const RPoint nb = triangle_normal(b);
  std::array<Rational, 3> va, vb;
  std::array<int, 3> sa, sb;
  for (int i = 0; i < 3; ++i) {
    vb[i] = na.dot(b[i] - a[0]);
    sb[i] = sgn(vb[i]);
    va[i] = nb.dot(a[i] - b[0]);
    sa[i] = sgn(va[i]);
  }
  auto one_side = [](const std::array<int, 3>& s) {
    return (s[0] > 0 && s[1] > 0 && s[2] > 0) ||
           (s[0] < 0 && s[1] < 0 && s[2] < 0);
  };
  if (one_side(sa) || one_side(sb)) return result;

  if (sb[0] == 0 && sb[1] == 0 && sb[2] == 0) {
    const int axis = dominant_axis(na);
    const std::array<RPoint2, 3> a2 = {project(a[0], axis), project(a[1], axis),
                                       project(a[2], axis)};
    const std::array<RPoint2, 3> b2 = {project(b[0], axis), project(b[1], axis),
                                       project(b[2], axis)};
    const std::vector<RPoint2> poly = clip_coplanar(a2, b2);
    if (poly.empty()) return result;
    const RPlane plane = plane_of(a[0], a[1], a[2]);
    std::vector<RPoint> pts;
    for (const RPoint2& q : poly) pts.push_back(plane.lift(q, axis));
    bool flat = true;
    for (size_t i = 2; i < pts.size() && flat; ++i)
      flat = is_zero(triangle_normal(pts[0], pts[1], pts[i]));
    if (pts.size() == 1) {
      result.kind = IntersectionKind::kPoint;
      result.points = std::move(pts);
    } else if (flat) {
      const RPoint dir = pts[1] - pts[0];
      order_along(pts, dir);
      result.kind = IntersectionKind::kSegment;
      result.points = {pts.front(), pts.back()};
    } else {
      // Orient counter-clockwise about na.
      if (sgn(triangle_normal(pts[0], pts[1], pts[2]).dot(na)) < 0)
        std::reverse(pts.begin(), pts.end());
      result.kind = IntersectionKind::kPolygon;
      result.points = std::move(pts);
    }
    return result;
  }

  std::vector<RPoint> ca = plane_cut(a, sa, va);
  std::vector<RPoint> cb = plane_cut(b, sb, vb);
  if (ca.empty() || cb.empty()) return result;
  const RPoint dir = na.cross(nb);
  order_along(ca, dir);
  order_along(cb, dir);
  const Rational a_lo = dir.dot(ca.front()), a_hi = dir.dot(ca.back());
  const Rational b_lo = dir.dot(cb.front()), b_hi = dir.dot(cb.back());
  const RPoint& lo = a_lo >= b_lo ? ca.front() : cb.front();
  const RPoint& hi = a_hi <= b_hi ? ca.back() : cb.back();
  const Rational t_lo = dir.dot(lo), t_hi = dir.dot(hi);
  if (t_lo > t_hi) return result;
  if (t_lo == t_hi) {
    result.kind = IntersectionKind::kPoint;
    result.points = {lo};
  } else {
    result.kind = IntersectionKind::kSegment;
    result.points = {lo, hi};
  }
  return result;
}

bool segment_meets_triangle(const RPoint& a, const RPoint& b,
                            const RTriangle& t) {
  const RPoint n = triangle_normal(t);
  if (is_zero(n)) {
    for (int k = 0; k < 3; ++k) {
      if (point_on_segment(t[k], a, b)) return true;
    }
    return point_in_triangle(a, t) || point_in_triangle(b, t);
  }
  const Rational va = n.dot(a - t[0]);
  const Rational vb = n.dot(b - t[0]);
  const int sa = sgn(va), sb = sgn(vb);
  if (sa * sb > 0) return false;
  if (sa != 0 || sb != 0) {
    const RPoint p = sa == 0 ? a : (sb == 0 ? b : RPoint(a + (b - a) * Rational(va / (va - vb))));
    return point_in_triangle(p, t);
  }
  // Coplanar.
  if (point_in_triangle(a, t) || point_in_triangle(b, t)) return true;
  const int axis = dominant_axis(n);
  const RPoint2 a2 = project(a, axis), b2 = project(b, axis);
  for (int k = 0; k < 3; ++k) {
    const RPoint2 c = project(t[k], axis), d = project(t[(k + 1) % 3], axis);
    const int o1 = orient2d(a2, b2, c), o2 = orient2d(a2, b2, d);
    const int o3 = orient2d(c, d, a2), o4 = orient2d(c, d, b2);
    if (o1 * o2 <= 0 && o3 * o4 <= 0) {
      if (o1 == 0 && o2 == 0) {
        if (point_on_segment_2d(c, a2, b2) || point_on_segment_2d(d, a2, b2))
          return true;
        continue;
      }
      return true;
    }
  }
  return false;
}

}  // namespace miter
