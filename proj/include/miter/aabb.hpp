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

#include <algorithm>
#include <array>
#include <limits>
#include <span>
#include <vector>

#include "miter/rational.hpp"

namespace miter {

/// Axis-aligned box in doubles. Boxes built from rational geometry are
/// rounded outward so they always enclose the exact primitive.
struct Box {
  Vec3d lo = Vec3d::Constant(std::numeric_limits<double>::infinity());
  Vec3d hi = Vec3d::Constant(-std::numeric_limits<double>::infinity());

  bool empty() const { return lo.x() > hi.x(); }

  void expand(const Vec3d& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void expand(const RPoint& p) {
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], round_down(p[i]));
      hi[i] = std::max(hi[i], round_up(p[i]));
    }
  }
  void expand(const Box& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  Box inflated(double margin) const {
    Box b = *this;
    b.lo.array() -= margin;
    b.hi.array() += margin;
    return b;
  }
  bool overlaps(const Box& b) const {
    return (lo.array() <= b.hi.array()).all() &&
           (b.lo.array() <= hi.array()).all();
  }
  bool contains(const Vec3d& p) const {
    return (lo.array() <= p.array()).all() && (p.array() <= hi.array()).all();
  }
  bool contains(const Box& b) const {
    return (lo.array() <= b.lo.array()).all() &&
           (b.hi.array() <= hi.array()).all();
  }
  Vec3d center() const { return 0.5 * (lo + hi); }
  double squared_distance(const Vec3d& p) const {
    const Vec3d d = (lo - p).cwiseMax(p - hi).cwiseMax(0.0);
    return d.squaredNorm();
  }

  template <typename Range>
  static Box of(const Range& points) {
    Box b;
    for (const auto& p : points) b.expand(p);
    return b;
  }
};

/// Static bounding volume hierarchy over primitive boxes. Queries are
/// conservative: every primitive whose box meets the query is reported.
class AabbTree {
 public:
  AabbTree() = default;
  explicit AabbTree(std::vector<Box> boxes);

  size_t size() const { return boxes_.size(); }
  const Box& box(int id) const { return boxes_[id]; }
  Box bounds() const { return nodes_.empty() ? Box{} : nodes_[0].box; }

  /// Calls visit(id) for every primitive whose box overlaps `query`.
  template <typename F>
  void query(const Box& query, F&& visit) const {
    if (nodes_.empty()) return;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& n = nodes_[stack[--top]];
      if (!n.box.overlaps(query)) continue;
      if (n.left < 0) {
        for (int i = n.begin; i < n.end; ++i)
          if (boxes_[order_[i]].overlaps(query)) visit(order_[i]);
      } else {
        stack[top++] = n.left;
        stack[top++] = n.right;
      }
    }
  }

  /// Primitives whose (slightly widened) box is hit by the ray
  /// origin + t * dir, t >= 0.
  template <typename F>
  void query_ray(const Vec3d& origin, const Vec3d& dir, F&& visit) const {
    if (nodes_.empty()) return;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& n = nodes_[stack[--top]];
      if (!ray_hits(n.box, origin, dir)) continue;
      if (n.left < 0) {
        for (int i = n.begin; i < n.end; ++i)
          if (ray_hits(boxes_[order_[i]], origin, dir)) visit(order_[i]);
      } else {
        stack[top++] = n.left;
        stack[top++] = n.right;
      }
    }
  }

  /// Branch-and-bound nearest search. `visit(id)` inspects a primitive and
  /// returns the current squared search radius; nodes farther than that
  /// radius are skipped.
  template <typename F>
  void nearest(const Vec3d& p, F&& visit) const {
    if (nodes_.empty()) return;
    double radius2 = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, int>> heap;
    heap.emplace_back(nodes_[0].box.squared_distance(p), 0);
    auto cmp = [](const auto& a, const auto& b) { return a.first > b.first; };
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), cmp);
      auto [dist2, id] = heap.back();
      heap.pop_back();
      if (dist2 > radius2) break;
      const Node& n = nodes_[id];
      if (n.left < 0) {
        for (int i = n.begin; i < n.end; ++i) {
          if (boxes_[order_[i]].squared_distance(p) > radius2) continue;
          radius2 = visit(order_[i]);
        }
      } else {
        for (int child : {n.left, n.right}) {
          const double d2 = nodes_[child].box.squared_distance(p);
          if (d2 <= radius2) {
            heap.emplace_back(d2, child);
            std::push_heap(heap.begin(), heap.end(), cmp);
          }
        }
      }
    }
  }

  static bool ray_hits(const Box& box, const Vec3d& origin, const Vec3d& dir);

 private:
  struct Node {
    Box box;
    int left = -1, right = -1;
    int begin = 0, end = 0;
  };
  int build(int begin, int end, int depth);

  std::vector<Box> boxes_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace miter
