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

#include <cstdint>
#include <vector>

#include "miter/aabb.hpp"
#include "miter/topology.hpp"

namespace miter {

/// Floating point copy of a mesh for measurement.
struct SurfaceMesh {
  std::vector<Vec3d> vertices;
  std::vector<TriIndex> triangles;

  static SurfaceMesh from(const WeldedMesh& mesh);
  Triangle3<double> triangle(size_t t) const {
    const TriIndex& f = triangles[t];
    return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
  }
  double area() const;
};

struct SamplerConfig {
  /// Expected samples per unit of diagonal^2 of surface area.
  double density = 1e4;
  int min_per_triangle = 10;
  uint64_t seed = 1;
};

struct SurfaceSamples {
  std::vector<Vec3d> points;
  std::vector<int> triangles;
  /// Area carried by each sample; they sum to the surface area.
  std::vector<double> weights;
};

/// Uniform random samples; each triangle gets a count proportional to its
/// area, at least `min_per_triangle`.
SurfaceSamples sample_surface(const SurfaceMesh& mesh, double diagonal,
                              const SamplerConfig& config);

/// Closest point queries against a fixed mesh.
class DistanceQuery {
 public:
  explicit DistanceQuery(const SurfaceMesh& mesh);

  struct Result {
    double point_distance = 0.0;
    /// Distance to the tangent plane at the closest point. Where several
    /// triangles share the closest point the smallest plane distance wins.
    double plane_distance = 0.0;
    int triangle = -1;
    Vec3d closest = Vec3d::Zero();
  };
  Result query(const Vec3d& p) const;

 private:
  const SurfaceMesh& mesh_;
  std::vector<Vec3d> normals_;
  AabbTree tree_;
};

struct MetricValue {
  double value = 0.0;
  bool defined = false;
};

/// Area-weighted mean distance from samples of `from` to `to`.
MetricValue h_point(const SurfaceMesh& from, const SurfaceMesh& to,
                    double diagonal, const SamplerConfig& config, int threads = 1);
MetricValue h_plane(const SurfaceMesh& from, const SurfaceMesh& to,
                    double diagonal, const SamplerConfig& config, int threads = 1);

struct FeatureEdge {
  int a = 0, b = 0;
  /// Unsigned dihedral angle between the two faces, radians (pi is flat).
  double dihedral = 0.0;
};

struct FeatureSample {
  Vec3d point = Vec3d::Zero();
  double dihedral = 0.0;
  int edge = -1;
  double weight = 0.0;  // arc length carried
};

struct FeatureLineSet {
  std::vector<FeatureEdge> edges;
  /// Vertex chains; closed chains repeat their first vertex at the end.
  std::vector<std::vector<int>> chains;
  std::vector<FeatureSample> samples;
  double length = 0.0;
};

/// Manifold edges whose faces bend away from flat by more than
/// `threshold_degrees`, chained through vertices of degree two and sampled
/// every `spacing` along the chains.
FeatureLineSet detect_features(const SurfaceMesh& mesh, double threshold_degrees,
                               double spacing);

/// Arc-length mean of |theta(v) - theta(nearest sample of b)| over the
/// samples v of a. Undefined when either set is empty.
MetricValue d_angle(const FeatureLineSet& a, const FeatureLineSet& b);

struct MetricsConfig {
  SamplerConfig sampler;
  double feature_degrees = 30.0;
  /// Feature sample spacing as a fraction of the diagonal.
  double feature_spacing = 1e-3;
  int threads = 1;
};

struct MeshReport {
  MetricValue h_point_oi, h_plane_oi, h_point_io, h_plane_io;
  MetricValue d_point_oi, d_plane_oi, d_point_io, d_plane_io;
  MetricValue d_angle_oi, d_angle_io;
  int faces = 0;
  double seconds = 0.0;
  bool success = false;
};

/// Distances and feature scores between input and offset. `distance` is the
/// reference offset d. Inward runs only measure from the offset side.
MeshReport measure(const SurfaceMesh& input, const SurfaceMesh& output,
                   double diagonal, double distance, int direction,
                   const MetricsConfig& config);

}  // namespace miter
