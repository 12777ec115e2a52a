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

#include "miter/winding.hpp"

#include <cmath>
#include <numbers>

#include "miter/ray.hpp"

namespace miter {

double solid_angle_fraction(const Vec3d& q, const Vec3d& a, const Vec3d& b,
                            const Vec3d& c) {
  const Vec3d x = a - q, y = b - q, z = c - q;
  const double lx = x.norm(), ly = y.norm(), lz = z.norm();
  const double det = x.dot(y.cross(z));
  const double den = lx * ly * lz + x.dot(y) * lz + y.dot(z) * lx + z.dot(x) * ly;
  return 2.0 * std::atan2(det, den) / (4.0 * std::numbers::pi);
}

double winding_number(const Vec3d& q,
                      std::span<const Triangle3<double>> triangles) {
  double w = 0.0;
  for (const auto& t : triangles) w += solid_angle_fraction(q, t[0], t[1], t[2]);
  return w;
}

SideOracle::SideOracle(std::vector<RTriangle> triangles, double guard)
    : exact_(std::move(triangles)), guard_(guard) {
  approx_.reserve(exact_.size());
  for (const RTriangle& t : exact_)
    approx_.push_back({to_double(t[0]), to_double(t[1]), to_double(t[2])});
  tree_ = build_triangle_tree(exact_);
}

double SideOracle::winding(const Vec3d& q) const {
  return winding_number(q, approx_);
}

double SideOracle::distance(const Vec3d& q) const {
  double best = std::numeric_limits<double>::infinity();
  tree_.nearest(q, [&](int id) {
    best = std::min(best, squared_distance(q, approx_[id]));
    return best;
  });
  return std::sqrt(best);
}

bool SideOracle::on_surface(const RPoint& p) const {
  Box probe;
  probe.expand(p);
  bool hit = false;
  tree_.query(probe, [&](int id) {
    if (!hit && point_in_triangle(p, exact_[id])) hit = true;
  });
  return hit;
}

bool SideOracle::inside(const RPoint& p, const Vec3d* nudge) const {
  const Vec3d q = to_double(p);
  if (distance(q) <= guard_) {
    if (!on_surface(p)) {
      const int parity = ray_parity(p, exact_, tree_);
      if (parity >= 0) return parity == 1;
    } else if (nudge != nullptr) {
      return winding(q + 1000.0 * guard_ * nudge->normalized()) > 0.5;
    }
  }
  return winding(q) > 0.5;
}

}  // namespace miter
