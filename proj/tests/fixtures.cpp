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

#include "fixtures.hpp"

#include <cmath>
#include <map>

namespace miter::testing {

namespace {

// Coordinates on a 1e-6 grid keep the exact arithmetic small.
Rational grid(double x) {
  Rational q(static_cast<long>(std::lround(x * 1e6)), 1000000L);
  q.canonicalize();
  return q;
}

RPoint rp(double x, double y, double z) { return RPoint(grid(x), grid(y), grid(z)); }

TriangleSoup finish(TriangleSoup m) {
  m.set_uniform_distance(0);
  return m;
}

}  // namespace

TriangleSoup box(const RPoint& lo, const RPoint& hi) {
  TriangleSoup m;
  for (int k = 0; k < 8; ++k) {
    // Same corner order as the usual unit-cube listing.
    static const int bits[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    RPoint p;
    for (int i = 0; i < 3; ++i) p[i] = bits[k][i] ? hi[i] : lo[i];
    m.vertices.push_back(p);
  }
  m.triangles = {{0, 2, 1}, {0, 3, 2}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                 {1, 2, 6}, {1, 6, 5}, {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
  return finish(m);
}

TriangleSoup unit_cube() { return box(RPoint(0, 0, 0), RPoint(1, 1, 1)); }

TriangleSoup extrusion(const std::vector<std::array<Rational, 2>>& polygon,
                       const std::vector<TriIndex>& cap, const Rational& height) {
  TriangleSoup m;
  const int n = static_cast<int>(polygon.size());
  for (const auto& p : polygon) m.vertices.push_back(RPoint(p[0], p[1], 0));
  for (const auto& p : polygon) m.vertices.push_back(RPoint(p[0], p[1], height));
  for (const TriIndex& t : cap) {
    m.triangles.push_back({t[0], t[2], t[1]});
    m.triangles.push_back({t[0] + n, t[1] + n, t[2] + n});
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    m.triangles.push_back({i, j, j + n});
    m.triangles.push_back({i, j + n, i + n});
  }
  return finish(m);
}

TriangleSoup l_bracket() {
  return extrusion({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}},
                   {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}}, 1);
}

TriangleSoup prism_345() {
  return extrusion({{0, 0}, {1, 0}, {0, Rational(3, 4)}}, {{0, 1, 2}}, Rational(1, 2));
}

TriangleSoup hex_prism() {
  const Rational h(7, 8), half(1, 2);
  return extrusion({{1, 0}, {half, h}, {-half, h}, {-1, 0}, {-half, -h}, {half, -h}},
                   {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}}, 1);
}

TriangleSoup octahedron() {
  TriangleSoup m;
  m.vertices = {RPoint(1, 0, 0), RPoint(-1, 0, 0), RPoint(0, 1, 0),
                RPoint(0, -1, 0), RPoint(0, 0, 1), RPoint(0, 0, -1)};
  m.triangles = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                 {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return finish(m);
}

namespace {

void icosahedron_raw(std::vector<Vec3d>& v, std::vector<TriIndex>& f) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
       {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3d& p : v) p.normalize();
  f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
}

TriangleSoup from_double_mesh(const std::vector<Vec3d>& v, const std::vector<TriIndex>& f) {
  TriangleSoup m;
  for (const Vec3d& p : v) m.vertices.push_back(rp(p.x(), p.y(), p.z()));
  m.triangles = f;
  return finish(m);
}

}  // namespace

TriangleSoup icosahedron() { return sphere(0); }

TriangleSoup sphere(int levels) {
  std::vector<Vec3d> v;
  std::vector<TriIndex> f;
  icosahedron_raw(v, f);
  for (int level = 0; level < levels; ++level) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint_of = [&](int a, int b) {
      const std::pair<int, int> key(std::min(a, b), std::max(a, b));
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      return mid[key] = static_cast<int>(v.size()) - 1;
    };
    std::vector<TriIndex> next;
    for (const TriIndex& t : f) {
      const int a = midpoint_of(t[0], t[1]);
      const int b = midpoint_of(t[1], t[2]);
      const int c = midpoint_of(t[2], t[0]);
      next.push_back({t[0], a, c});
      next.push_back({t[1], b, a});
      next.push_back({t[2], c, b});
      next.push_back({a, b, c});
    }
    f = std::move(next);
  }
  return from_double_mesh(v, f);
}

TriangleSoup cylinder(int segments, double radius, double height) {
  std::vector<Vec3d> v;
  std::vector<TriIndex> f;
  for (int i = 0; i < segments; ++i) {
    const double a = 2 * M_PI * i / segments;
    v.push_back({radius * std::cos(a), radius * std::sin(a), 0});
  }
  for (int i = 0; i < segments; ++i) v.push_back(v[i] + Vec3d(0, 0, height));
  const int bottom = static_cast<int>(v.size());
  v.push_back({0, 0, 0});
  v.push_back({0, 0, height});
  const int n = segments;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    f.push_back({i, j, j + n});
    f.push_back({i, j + n, i + n});
    f.push_back({bottom, j, i});
    f.push_back({bottom + 1, i + n, j + n});
  }
  return from_double_mesh(v, f);
}

TriangleSoup torus(int major_segments, int minor_segments, double major, double minor) {
  std::vector<Vec3d> v;
  std::vector<TriIndex> f;
  for (int i = 0; i < major_segments; ++i) {
    const double u = 2 * M_PI * i / major_segments;
    for (int j = 0; j < minor_segments; ++j) {
      const double w = 2 * M_PI * j / minor_segments;
      const double r = major + minor * std::cos(w);
      v.push_back({r * std::cos(u), r * std::sin(u), minor * std::sin(w)});
    }
  }
  auto id = [&](int i, int j) {
    return (i % major_segments) * minor_segments + (j % minor_segments);
  };
  for (int i = 0; i < major_segments; ++i) {
    for (int j = 0; j < minor_segments; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      f.push_back({a, b, c});
      f.push_back({a, c, d});
    }
  }
  return from_double_mesh(v, f);
}

TriangleSoup two_cones(int segments) {
  std::vector<Vec3d> v = {{0, 0, 0}};
  std::vector<TriIndex> f;
  for (int s = 0; s < 2; ++s) {
    const double z = s == 0 ? 1.0 : -1.0;
    const int base = static_cast<int>(v.size());
    for (int i = 0; i < segments; ++i) {
      const double a = 2 * M_PI * i / segments;
      v.push_back({0.5 * std::cos(a), 0.5 * std::sin(a), z});
    }
    const int center = static_cast<int>(v.size());
    v.push_back({0, 0, z});
    for (int i = 0; i < segments; ++i) {
      const int p = base + i, q = base + (i + 1) % segments;
      if (s == 0) {
        f.push_back({0, q, p});
        f.push_back({center, p, q});
      } else {
        f.push_back({0, p, q});
        f.push_back({center, q, p});
      }
    }
  }
  return from_double_mesh(v, f);
}

TriangleSoup open_cube() {
  TriangleSoup m = unit_cube();
  // Drop the two z = 1 triangles.
  m.triangles.erase(m.triangles.begin() + 2, m.triangles.begin() + 4);
  return finish(m);
}

TriangleSoup fin() {
  TriangleSoup m;
  m.vertices = {RPoint(0, 0, 0), RPoint(1, 0, 0), RPoint(1, 1, 0), RPoint(0, 1, 0)};
  m.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 2, 1}, {0, 3, 2}};
  return finish(m);
}

TriangleSoup two_cubes() {
  return merge({unit_cube(), box(RPoint(Rational(1, 2), Rational(1, 4), Rational(1, 4)),
                                 RPoint(Rational(3, 2), Rational(5, 4), Rational(5, 4)))});
}

TriangleSoup merge(const std::vector<TriangleSoup>& parts) {
  TriangleSoup m;
  for (const TriangleSoup& p : parts) {
    const int base = static_cast<int>(m.vertices.size());
    m.vertices.insert(m.vertices.end(), p.vertices.begin(), p.vertices.end());
    for (const TriIndex& t : p.triangles)
      m.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    m.per_face_distance.insert(m.per_face_distance.end(), p.per_face_distance.begin(),
                               p.per_face_distance.end());
  }
  m.per_face_distance.resize(m.triangles.size(), 0);
  return m;
}

std::vector<std::pair<std::string, TriangleSoup>> corpus() {
  return {{"cube", unit_cube()},
          {"box", box(RPoint(0, 0, 0), RPoint(2, 1, Rational(1, 2)))},
          {"l_bracket", l_bracket()},
          {"prism_345", prism_345()},
          {"hex_prism", hex_prism()},
          {"octahedron", octahedron()},
          {"icosahedron", icosahedron()},
          {"sphere", sphere(1)},
          {"cylinder", cylinder(12, 0.5, 1.0)},
          {"torus", torus(8, 6, 1.0, 0.35)},
          {"two_cones", two_cones(6)},
          {"open_cube", open_cube()},
          {"fin", fin()},
          {"two_cubes", two_cubes()}};
}

}  // namespace miter::testing
