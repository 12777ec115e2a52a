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

#include "miter/rational.hpp"

namespace miter {

template <typename Scalar>
using Triangle3 = std::array<Vec3<Scalar>, 3>;
using RTriangle = Triangle3<Rational>;

/// Unnormalized normal (b - a) x (c - a).
template <typename Scalar>
Vec3<Scalar> triangle_normal(const Vec3<Scalar>& a, const Vec3<Scalar>& b,
                             const Vec3<Scalar>& c) {
  return (b - a).cross(c - a);
}

template <typename Scalar>
Vec3<Scalar> triangle_normal(const Triangle3<Scalar>& t) {
  return triangle_normal(t[0], t[1], t[2]);
}

/// Positive when d lies on the side of plane(a, b, c) its normal
/// (b - a) x (c - a) points to.
template <typename Scalar>
Scalar orient3d_value(const Vec3<Scalar>& a, const Vec3<Scalar>& b,
                      const Vec3<Scalar>& c, const Vec3<Scalar>& d) {
  return triangle_normal(a, b, c).dot(d - a);
}

inline int orient3d(const RPoint& a, const RPoint& b, const RPoint& c,
                    const RPoint& d) {
  return sgn(orient3d_value(a, b, c, d));
}

/// Positive for a counter-clockwise turn a -> b -> c.
template <typename Scalar>
Scalar orient2d_value(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
                      const Vec2<Scalar>& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

inline int orient2d(const RPoint2& a, const RPoint2& b, const RPoint2& c) {
  return sgn(orient2d_value(a, b, c));
}

template <typename Scalar>
Vec3<Scalar> centroid(const Triangle3<Scalar>& t) {
  return (t[0] + t[1] + t[2]) / Scalar(3);
}

template <typename Scalar>
Vec3<Scalar> midpoint(const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
  return (a + b) / Scalar(2);
}

inline bool is_degenerate(const RTriangle& t) {
  const RPoint n = triangle_normal(t);
  return sgn(n[0]) == 0 && sgn(n[1]) == 0 && sgn(n[2]) == 0;
}

inline bool is_zero(const RPoint& v) {
  return sgn(v[0]) == 0 && sgn(v[1]) == 0 && sgn(v[2]) == 0;
}

/// Axis of the largest-magnitude component; projecting along it is a
/// bijection on a plane with this normal.
int dominant_axis(const RPoint& normal);

/// Drops coordinate `axis`, keeping the cyclic order of the remaining two so
/// orientation is preserved when normal[axis] > 0.
inline RPoint2 project(const RPoint& p, int axis) {
  return RPoint2(p[(axis + 1) % 3], p[(axis + 2) % 3]);
}

/// Plane a x + b y + c z + d = 0 held exactly, plus a unit-normalized double
/// copy for least-squares work.
struct RPlane {
  RPoint normal;
  Rational offset;
  Vec3d unit_normal = Vec3d::Zero();
  double unit_offset = 0.0;

  /// Sign-exact evaluation of normal . p + offset.
  Rational evaluate(const RPoint& p) const { return normal.dot(p) + offset; }
  int side(const RPoint& p) const { return sgn(evaluate(p)); }
  /// Inverse of project(): the point of this plane above `q`.
  RPoint lift(const RPoint2& q, int axis) const;
};

RPlane plane_of(const RPoint& a, const RPoint& b, const RPoint& c);

/// Closed test for a point lying in triangle abc (coplanarity included).
bool point_in_triangle(const RPoint& p, const RTriangle& t);

/// Closed 2D test; triangle may have either orientation.
bool point_in_triangle_2d(const RPoint2& p, const RPoint2& a, const RPoint2& b,
                          const RPoint2& c);

/// True when p lies on the closed segment ab (collinear and between).
bool point_on_segment(const RPoint& p, const RPoint& a, const RPoint& b);
bool point_on_segment_2d(const RPoint2& p, const RPoint2& a, const RPoint2& b);

/// Exact squared Euclidean distance from p to the closed triangle.
Rational squared_distance(const RPoint& p, const RTriangle& t);

/// Double version used by metrics; also returns the closest point.
double squared_distance(const Vec3d& p, const Triangle3<double>& t,
                        Vec3d* closest = nullptr);

}  // namespace miter
