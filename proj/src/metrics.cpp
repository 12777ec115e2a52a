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

#include "miter/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "miter/parallel.hpp"

namespace miter {

namespace {

double pairwise_sum(const double* v, size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double triangle_area(const Triangle3<double>& t) {
  return 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
}

MetricValue mean_distance(const SurfaceMesh& from, const SurfaceMesh& to,
                          double diagonal, const SamplerConfig& config,
                          int threads, bool plane) {
  MetricValue out;
  if (from.triangles.empty() || to.triangles.empty()) return out;
  const SurfaceSamples s = sample_surface(from, diagonal, config);
  if (s.points.empty()) return out;
  const DistanceQuery q(to);
  std::vector<double> terms(s.points.size());
  parallel_for(s.points.size(), threads, [&](size_t i) {
    const DistanceQuery::Result r = q.query(s.points[i]);
    terms[i] = s.weights[i] * (plane ? r.plane_distance : r.point_distance);
  });
  const double total = pairwise_sum(s.weights.data(), s.weights.size());
  if (!(total > 0)) return out;
  out.value = pairwise_sum(terms.data(), terms.size()) / total;
  out.defined = true;
  return out;
}

MetricValue deviation(const MetricValue& h, double d) {
  MetricValue out;
  out.defined = h.defined;
  out.value = h.defined ? std::abs(h.value - d) : 0.0;
  return out;
}

}  // namespace

SurfaceMesh SurfaceMesh::from(const WeldedMesh& mesh) {
  SurfaceMesh out;
  out.vertices.reserve(mesh.vertices.size());
  for (const RPoint& p : mesh.vertices) out.vertices.push_back(to_double(p));
  out.triangles = mesh.triangles;
  return out;
}

double SurfaceMesh::area() const {
  std::vector<double> a(triangles.size());
  for (size_t t = 0; t < triangles.size(); ++t) a[t] = triangle_area(triangle(t));
  return pairwise_sum(a.data(), a.size());
}

SurfaceSamples sample_surface(const SurfaceMesh& mesh, double diagonal,
                              const SamplerConfig& config) {
  SurfaceSamples out;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double per_area = config.density / (diagonal * diagonal);
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Triangle3<double> tri = mesh.triangle(t);
    const double area = triangle_area(tri);
    if (!(area > 0)) continue;
    const double expected = area * per_area;
    int count = static_cast<int>(std::floor(expected));
    if (uniform(rng) < expected - count) ++count;
    count = std::max(count, config.min_per_triangle);
    for (int i = 0; i < count; ++i) {
      double r1 = std::sqrt(uniform(rng));
      double r2 = uniform(rng);
      out.points.push_back((1 - r1) * tri[0] + r1 * (1 - r2) * tri[1] +
                           r1 * r2 * tri[2]);
      out.triangles.push_back(static_cast<int>(t));
      out.weights.push_back(area / count);
    }
  }
  return out;
}

DistanceQuery::DistanceQuery(const SurfaceMesh& mesh) : mesh_(mesh) {
  std::vector<Box> boxes;
  boxes.reserve(mesh.triangles.size());
  normals_.reserve(mesh.triangles.size());
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Triangle3<double> tri = mesh.triangle(t);
    boxes.push_back(Box::of(tri));
    const Vec3d n = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
    const double len = n.norm();
    normals_.push_back(len > 0 ? Vec3d(n / len) : Vec3d::Zero());
  }
  tree_ = AabbTree(std::move(boxes));
}

DistanceQuery::Result DistanceQuery::query(const Vec3d& p) const {
  Result r;
  double best2 = std::numeric_limits<double>::infinity();
  tree_.nearest(p, [&](int t) {
    Vec3d c;
    const double d2 = squared_distance(p, mesh_.triangle(t), &c);
    if (d2 < best2 || (d2 == best2 && t < r.triangle)) {
      best2 = d2;
      r.triangle = t;
      r.closest = c;
    }
    return best2;
  });
  if (r.triangle < 0) return r;
  r.point_distance = std::sqrt(best2);
  // Triangles that share the closest point (an edge or a vertex) each offer a
  // tangent plane. Sharing means the same point up to rounding.
  const double limit = r.point_distance * (1 + 1e-9) + 1e-12;
  const double same = 1e-12 * (1 + r.closest.norm());
  r.plane_distance = std::abs(normals_[r.triangle].dot(p - r.closest));
  Box probe;
  probe.expand(p);
  tree_.query(probe.inflated(limit), [&](int t) {
    if (normals_[t].isZero()) return;
    Vec3d c;
    squared_distance(p, mesh_.triangle(t), &c);
    if ((c - r.closest).norm() <= same)
      r.plane_distance = std::min(r.plane_distance, std::abs(normals_[t].dot(p - c)));
  });
  return r;
}

MetricValue h_point(const SurfaceMesh& from, const SurfaceMesh& to,
                    double diagonal, const SamplerConfig& config, int threads) {
  return mean_distance(from, to, diagonal, config, threads, false);
}

MetricValue h_plane(const SurfaceMesh& from, const SurfaceMesh& to,
                    double diagonal, const SamplerConfig& config, int threads) {
  return mean_distance(from, to, diagonal, config, threads, true);
}

FeatureLineSet detect_features(const SurfaceMesh& mesh, double threshold_degrees,
                               double spacing) {
  FeatureLineSet out;
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const TriIndex& f = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = f[k], b = f[(k + 1) % 3];
      if (a == b) continue;
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(t));
    }
  }
  auto normal = [&](int t) {
    const Triangle3<double> tri = mesh.triangle(t);
    return Vec3d((tri[1] - tri[0]).cross(tri[2] - tri[0]));
  };
  const double threshold = threshold_degrees * M_PI / 180.0;
  std::map<int, std::vector<int>> incident;
  for (const auto& [e, faces] : edge_faces) {
    if (faces.size() != 2) continue;
    const Vec3d n0 = normal(faces[0]), n1 = normal(faces[1]);
    if (n0.isZero() || n1.isZero()) continue;
    const double bend = std::atan2(n0.cross(n1).norm(), n0.dot(n1));
    if (!(bend > threshold)) continue;
    const int id = static_cast<int>(out.edges.size());
    out.edges.push_back({e.first, e.second, M_PI - bend});
    incident[e.first].push_back(id);
    incident[e.second].push_back(id);
  }

  // Chains: walk from every vertex that is not a degree-2 continuation, then
  // pick up the closed loops that remain.
  std::vector<char> used(out.edges.size(), 0);
  auto walk = [&](int start, int first_edge) {
    std::vector<int> chain = {start};
    int v = start, e = first_edge;
    while (e >= 0 && !used[e]) {
      used[e] = 1;
      const FeatureEdge& fe = out.edges[e];
      v = fe.a == v ? fe.b : fe.a;
      chain.push_back(v);
      e = -1;
      const auto& inc = incident[v];
      if (inc.size() == 2)
        for (int c : inc)
          if (!used[c]) e = c;
    }
    return chain;
  };
  for (const auto& [v, inc] : incident) {
    if (inc.size() == 2) continue;
    for (int e : inc)
      if (!used[e]) out.chains.push_back(walk(v, e));
  }
  for (size_t e = 0; e < out.edges.size(); ++e)
    if (!used[e]) out.chains.push_back(walk(out.edges[e].a, static_cast<int>(e)));

  for (size_t e = 0; e < out.edges.size(); ++e) {
    const FeatureEdge& fe = out.edges[e];
    const Vec3d& a = mesh.vertices[fe.a];
    const Vec3d& b = mesh.vertices[fe.b];
    const double len = (b - a).norm();
    out.length += len;
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int i = 0; i < n; ++i) {
      const double s = (i + 0.5) / n;
      out.samples.push_back({a + s * (b - a), fe.dihedral, static_cast<int>(e), len / n});
    }
  }
  return out;
}

MetricValue d_angle(const FeatureLineSet& a, const FeatureLineSet& b) {
  MetricValue out;
  if (a.samples.empty() || b.samples.empty() || !(a.length > 0)) return out;
  std::vector<Box> boxes;
  boxes.reserve(b.samples.size());
  for (const FeatureSample& s : b.samples) {
    Box box;
    box.expand(s.point);
    boxes.push_back(box);
  }
  const AabbTree tree(std::move(boxes));
  std::vector<double> terms(a.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    const Vec3d& p = a.samples[i].point;
    double best2 = std::numeric_limits<double>::infinity();
    int best = -1;
    tree.nearest(p, [&](int j) {
      const double d2 = (b.samples[j].point - p).squaredNorm();
      if (d2 < best2 || (d2 == best2 && j < best)) {
        best2 = d2;
        best = j;
      }
      return best2;
    });
    terms[i] = a.samples[i].weight * std::abs(a.samples[i].dihedral - b.samples[best].dihedral);
  }
  out.value = pairwise_sum(terms.data(), terms.size()) / a.length;
  out.defined = true;
  return out;
}

MeshReport measure(const SurfaceMesh& input, const SurfaceMesh& output,
                   double diagonal, double distance, int direction,
                   const MetricsConfig& config) {
  MeshReport r;
  r.faces = static_cast<int>(output.triangles.size());
  r.h_point_oi = h_point(output, input, diagonal, config.sampler, config.threads);
  r.h_plane_oi = h_plane(output, input, diagonal, config.sampler, config.threads);
  r.d_point_oi = deviation(r.h_point_oi, distance);
  r.d_plane_oi = deviation(r.h_plane_oi, distance);
  const double spacing = config.feature_spacing * diagonal;
  const FeatureLineSet fi = detect_features(input, config.feature_degrees, spacing);
  const FeatureLineSet fo = detect_features(output, config.feature_degrees, spacing);
  r.d_angle_oi = d_angle(fo, fi);
  if (direction > 0) {
    r.h_point_io = h_point(input, output, diagonal, config.sampler, config.threads);
    r.h_plane_io = h_plane(input, output, diagonal, config.sampler, config.threads);
    r.d_point_io = deviation(r.h_point_io, distance);
    r.d_plane_io = deviation(r.h_plane_io, distance);
    r.d_angle_io = d_angle(fi, fo);
  }
  r.success = true;
  return r;
}

}  // namespace miter
