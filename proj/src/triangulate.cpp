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

#include "miter/triangulate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "miter/error.hpp"

namespace miter {

namespace {

struct Less2 {
  bool operator()(const RPoint2& a, const RPoint2& b) const {
    const int c = cmp(a[0], b[0]);
    if (c != 0) return c < 0;
    return cmp(a[1], b[1]) < 0;
  }
};

bool proper_crossing(const RPoint2& a, const RPoint2& b, const RPoint2& c,
                     const RPoint2& d) {
  const int o1 = orient2d(a, b, c), o2 = orient2d(a, b, d);
  const int o3 = orient2d(c, d, a), o4 = orient2d(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

RPoint2 crossing_point(const RPoint2& a, const RPoint2& b, const RPoint2& c,
                       const RPoint2& d) {
  const Rational oa = orient2d_value(c, d, a);
  const Rational ob = orient2d_value(c, d, b);
  const Rational t = oa / (oa - ob);
  return a + (b - a) * t;
}

using Tri = std::array<int, 3>;

class Builder {
 public:
  int add(const RPoint2& p) {
    auto [it, inserted] = ids_.emplace(p, static_cast<int>(pts_.size()));
    if (inserted) pts_.push_back(p);
    return it->second;
  }
  int find(const RPoint2& p) const {
    auto it = ids_.find(p);
    return it == ids_.end() ? -1 : it->second;
  }
  const std::vector<RPoint2>& pts() const { return pts_; }
  const RPoint2& pt(int i) const { return pts_[i]; }
  std::vector<Tri>& tris() { return tris_; }

  void insert_point(int v) {
    const RPoint2& p = pts_[v];
    for (size_t t = 0; t < tris_.size(); ++t) {
      const Tri tri = tris_[t];
      if (tri[0] == v || tri[1] == v || tri[2] == v) return;
      int o[3];
      bool outside = false;
      for (int k = 0; k < 3; ++k) {
        o[k] = orient2d(pts_[tri[k]], pts_[tri[(k + 1) % 3]], p);
        if (o[k] < 0) outside = true;
      }
      if (outside) continue;
      int zero = -1;
      for (int k = 0; k < 3; ++k)
        if (o[k] == 0) zero = k;
      if (zero < 0) {
        tris_[t] = {tri[0], tri[1], v};
        tris_.push_back({tri[1], tri[2], v});
        tris_.push_back({tri[2], tri[0], v});
        return;
      }
      // On edge (a, b): split this triangle and its neighbour.
      const int a = tri[zero], b = tri[(zero + 1) % 3], c = tri[(zero + 2) % 3];
      tris_[t] = {a, v, c};
      tris_.push_back({v, b, c});
      for (size_t u = 0; u < tris_.size(); ++u) {
        const Tri n = tris_[u];
        for (int k = 0; k < 3; ++k) {
          if (n[k] == b && n[(k + 1) % 3] == a) {
            const int d = n[(k + 2) % 3];
            tris_[u] = {b, v, d};
            tris_.push_back({v, a, d});
            return;
          }
        }
      }
      return;
    }
  }

  bool has_edge(int a, int b) const {
    for (const Tri& t : tris_)
      for (int k = 0; k < 3; ++k)
        if ((t[k] == a && t[(k + 1) % 3] == b) ||
            (t[k] == b && t[(k + 1) % 3] == a))
          return true;
    return false;
  }

  void insert_segment(int a, int b) {
    if (a == b || has_edge(a, b)) return;
    const RPoint2& pa = pts_[a];
    const RPoint2& pb = pts_[b];
    std::vector<Tri> keep, removed;
    for (const Tri& t : tris_) {
      bool crossed = false;
      for (int k = 0; k < 3 && !crossed; ++k)
        crossed = proper_crossing(pa, pb, pts_[t[k]], pts_[t[(k + 1) % 3]]);
      (crossed ? removed : keep).push_back(t);
    }
    if (removed.empty()) return;
    std::set<std::pair<int, int>> directed;
    for (const Tri& t : removed)
      for (int k = 0; k < 3; ++k) directed.insert({t[k], t[(k + 1) % 3]});
    std::map<int, int> next;
    for (auto [u, w] : directed)
      if (!directed.count({w, u})) next[u] = w;
    auto walk = [&](int from, int to) {
      std::vector<int> chain = {from};
      int cur = from;
      for (size_t guard = 0; cur != to && guard <= next.size(); ++guard) {
        cur = next.at(cur);
        chain.push_back(cur);
      }
      return chain;
    };
    tris_ = std::move(keep);
    triangulate_polygon_2d(pts_, walk(a, b), tris_);
    triangulate_polygon_2d(pts_, walk(b, a), tris_);
  }

 private:
  std::vector<RPoint2> pts_;
  std::map<RPoint2, int, Less2> ids_;
  std::vector<Tri> tris_;
};

}  // namespace

void triangulate_polygon_2d(const std::vector<RPoint2>& pts,
                            std::vector<int> poly, std::vector<Tri>& out) {
  auto inside_closed = [&](int k, int p, int c, int n) {
    return orient2d(pts[p], pts[c], pts[k]) >= 0 &&
           orient2d(pts[c], pts[n], pts[k]) >= 0 &&
           orient2d(pts[n], pts[p], pts[k]) >= 0;
  };
  while (poly.size() > 3) {
    const size_t n = poly.size();
    bool clipped = false;
    int convex = -1;
    for (size_t i = 0; i < n && !clipped; ++i) {
      const int p = poly[(i + n - 1) % n], c = poly[i], q = poly[(i + 1) % n];
      if (orient2d(pts[p], pts[c], pts[q]) <= 0) continue;
      if (convex < 0) convex = static_cast<int>(i);
      bool ear = true;
      for (size_t k = 0; k < n && ear; ++k) {
        const int v = poly[k];
        if (v == p || v == c || v == q) continue;
        if (inside_closed(v, p, c, q)) ear = false;
      }
      if (ear) {
        out.push_back({p, c, q});
        poly.erase(poly.begin() + static_cast<long>(i));
        clipped = true;
      }
    }
    if (clipped) continue;
    if (convex < 0) return;  // zero area left
    // Split along the diagonal to the vertex deepest inside the convex
    // corner's triangle.
    const size_t i = static_cast<size_t>(convex);
    const int p = poly[(i + n - 1) % n], c = poly[i], q = poly[(i + 1) % n];
    size_t best = n;
    Rational best_depth;
    for (size_t k = 0; k < n; ++k) {
      const int v = poly[k];
      if (v == p || v == c || v == q || !inside_closed(v, p, c, q)) continue;
      const Rational depth = -orient2d_value(pts[p], pts[q], pts[v]);
      if (best == n || depth > best_depth) {
        best = k;
        best_depth = depth;
      }
    }
    if (best == n) return;
    std::vector<int> left, right;
    for (size_t k = i;; k = (k + 1) % n) {
      left.push_back(poly[k]);
      if (k == best) break;
    }
    for (size_t k = best;; k = (k + 1) % n) {
      right.push_back(poly[k]);
      if (k == i) break;
    }
    triangulate_polygon_2d(pts, std::move(left), out);
    triangulate_polygon_2d(pts, std::move(right), out);
    return;
  }
  if (poly.size() == 3 && orient2d(pts[poly[0]], pts[poly[1]], pts[poly[2]]) > 0)
    out.push_back({poly[0], poly[1], poly[2]});
}

std::vector<RTriangle> constrained_facet_triangulation(
    std::span<const RPoint> polygon, const FacetConstraints& constraints) {
  const size_t m = polygon.size();
  if (m < 3) throw Error(ErrorKind::kGeometry, "facet needs 3 vertices");
  RPoint area = RPoint::Zero();
  for (size_t i = 0; i < m; ++i)
    area += polygon[i].cross(polygon[(i + 1) % m]);
  if (is_zero(area)) throw Error(ErrorKind::kGeometry, "facet has zero area");
  const int axis = dominant_axis(area);
  const bool flip = sgn(area[axis]) < 0;
  RPlane plane;
  plane.normal = area;
  plane.offset = -area.dot(polygon[0]);
  for (size_t i = 0; i < m; ++i)
    if (plane.side(polygon[i]) != 0)
      throw Error(ErrorKind::kGeometry, "facet is not planar");

  auto check = [&](const RPoint& p) {
    if (plane.side(p) != 0)
      throw Error(ErrorKind::kGeometry, "constraint off the facet plane");
  };

  Builder b;
  std::vector<int> boundary;
  for (size_t i = 0; i < m; ++i) boundary.push_back(b.add(project(polygon[i], axis)));
  if (flip) std::reverse(boundary.begin(), boundary.end());

  // All segments: boundary edges first, then constraints.
  std::vector<std::pair<int, int>> segs;
  for (size_t i = 0; i < m; ++i)
    segs.emplace_back(boundary[i], boundary[(i + 1) % m]);
  const size_t num_boundary = segs.size();
  for (const RPoint& p : constraints.points) {
    check(p);
    b.add(project(p, axis));
  }
  for (const auto& s : constraints.segments) {
    check(s[0]);
    check(s[1]);
    const int u = b.add(project(s[0], axis));
    const int w = b.add(project(s[1], axis));
    if (u != w) segs.emplace_back(u, w);
  }

  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      const RPoint2 a0 = b.pt(segs[i].first), a1 = b.pt(segs[i].second);
      const RPoint2 c0 = b.pt(segs[j].first), c1 = b.pt(segs[j].second);
      if (proper_crossing(a0, a1, c0, c1)) b.add(crossing_point(a0, a1, c0, c1));
    }
  }

  const std::vector<RPoint2> pts = b.pts();
  const int n = static_cast<int>(pts.size());

  // Every point must lie in the closed polygon.
  for (int v = 0; v < n; ++v) {
    bool on_boundary = false;
    int crossings = 0;
    for (size_t i = 0; i < num_boundary && !on_boundary; ++i) {
      const RPoint2& a = pts[segs[i].first];
      const RPoint2& c = pts[segs[i].second];
      if (point_on_segment_2d(pts[v], a, c)) on_boundary = true;
      const bool up = a.y() <= pts[v].y();
      if (up != (c.y() <= pts[v].y())) {
        const int o = orient2d(a, c, pts[v]);
        if ((c.y() > a.y()) == (o > 0)) ++crossings;
      }
    }
    if (!on_boundary && crossings % 2 == 0)
      throw Error(ErrorKind::kGeometry, "constraint outside the facet");
  }

  // Split every segment at the points lying on it.
  auto split = [&](int u, int w, std::vector<int>& chain) {
    const RPoint2 d = pts[w] - pts[u];
    std::vector<std::pair<Rational, int>> on;
    for (int v = 0; v < n; ++v) {
      if (v == u || v == w) continue;
      if (point_on_segment_2d(pts[v], pts[u], pts[w]))
        on.emplace_back(d.dot(pts[v] - pts[u]), v);
    }
    std::sort(on.begin(), on.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    chain.push_back(u);
    for (const auto& [t, v] : on) chain.push_back(v);
    chain.push_back(w);
  };

  std::vector<int> ring;
  for (size_t i = 0; i < m; ++i) {
    std::vector<int> chain;
    split(boundary[i], boundary[(i + 1) % m], chain);
    ring.insert(ring.end(), chain.begin(), chain.end() - 1);
  }
  std::vector<bool> on_ring(n, false);
  for (int v : ring) on_ring[v] = true;

  triangulate_polygon_2d(pts, ring, b.tris());
  for (int v = 0; v < n; ++v)
    if (!on_ring[v]) b.insert_point(v);
  for (size_t i = num_boundary; i < segs.size(); ++i) {
    std::vector<int> chain;
    split(segs[i].first, segs[i].second, chain);
    for (size_t k = 0; k + 1 < chain.size(); ++k)
      b.insert_segment(chain[k], chain[k + 1]);
  }

  // Lift back to 3D.
  std::map<RPoint2, RPoint, Less2> original;
  for (const RPoint& p : polygon) original.emplace(project(p, axis), p);
  for (const RPoint& p : constraints.points) original.emplace(project(p, axis), p);
  for (const auto& s : constraints.segments) {
    original.emplace(project(s[0], axis), s[0]);
    original.emplace(project(s[1], axis), s[1]);
  }
  std::vector<RPoint> lifted(n);
  for (int v = 0; v < n; ++v) {
    auto it = original.find(pts[v]);
    lifted[v] = it != original.end() ? it->second : plane.lift(pts[v], axis);
  }
  std::vector<RTriangle> out;
  out.reserve(b.tris().size());
  for (const Tri& t : b.tris()) {
    if (flip)
      out.push_back({lifted[t[0]], lifted[t[2]], lifted[t[1]]});
    else
      out.push_back({lifted[t[0]], lifted[t[1]], lifted[t[2]]});
  }
  return out;
}

}  // namespace miter
