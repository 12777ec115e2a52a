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

#include "miter/aabb.hpp"

#include <cmath>
#include <numeric>

namespace miter {

namespace {
constexpr int kLeafSize = 4;
constexpr int kMaxDepth = 60;
}  // namespace

AabbTree::AabbTree(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
  order_.resize(boxes_.size());
  std::iota(order_.begin(), order_.end(), 0);
  if (!boxes_.empty()) {
    nodes_.reserve(2 * boxes_.size() / kLeafSize + 2);
    build(0, static_cast<int>(boxes_.size()), 0);
  }
}

int AabbTree::build(int begin, int end, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Box box;
  Box centers;
  for (int i = begin; i < end; ++i) {
    box.expand(boxes_[order_[i]]);
    centers.expand(boxes_[order_[i]].center());
  }
  nodes_[id].box = box;
  nodes_[id].begin = begin;
  nodes_[id].end = end;
  if (end - begin <= kLeafSize || depth >= kMaxDepth) return id;

  int axis = 0;
  const Vec3d extent = centers.hi - centers.lo;
  extent.maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](int a, int b) {
                     const double ca = boxes_[a].center()[axis];
                     const double cb = boxes_[b].center()[axis];
                     return ca < cb || (ca == cb && a < b);
                   });
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

bool AabbTree::ray_hits(const Box& box, const Vec3d& origin, const Vec3d& dir) {
  // Widen the slabs so rounding in the double slab test cannot produce a
  // false negative for rays grazing the box.
  const double scale = std::max({box.hi.cwiseAbs().maxCoeff(),
                                 box.lo.cwiseAbs().maxCoeff(),
                                 origin.cwiseAbs().maxCoeff(), 1.0});
  const double pad = 1e-9 * scale;
  double tmin = 0.0;
  double tmax = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double lo = box.lo[i] - pad;
    const double hi = box.hi[i] + pad;
    if (std::abs(dir[i]) < 1e-300) {
      if (origin[i] < lo || origin[i] > hi) return false;
      continue;
    }
    double t0 = (lo - origin[i]) / dir[i];
    double t1 = (hi - origin[i]) / dir[i];
    if (t0 > t1) std::swap(t0, t1);
    t0 -= 1e-9 * (std::abs(t0) + 1.0);
    t1 += 1e-9 * (std::abs(t1) + 1.0);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return false;
  }
  return true;
}

}  // namespace miter
