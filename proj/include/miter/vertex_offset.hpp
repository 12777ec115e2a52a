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
#include <span>
#include <vector>

#include "miter/mesh.hpp"

namespace miter {

struct SolverConfig {
  /// Weight of the anchor term.
  double lambda = 1e-9;
  /// Plane-distance tolerance as a fraction of the bounding-box diagonal.
  double alpha = 1e-6;
  /// Initial merge angle between normals, in degrees.
  double merge_degrees = 1.0;
  /// The merge angle doubles up to this value while too many groups remain.
  double max_merge_degrees = 32.0;
  int max_clusters = 12;
  /// Neighbourhood gathering radius as a fraction of the diagonal.
  double epsilon = 1e-5;
};

/// Offset target for one plane: n . x + c = target, with |n| = 1.
struct OffsetPlane {
  Vec3d normal = Vec3d::UnitZ();
  double offset = 0.0;
  double target = 0.0;
};

struct SingleSolve {
  bool feasible = false;
  Vec3d point = Vec3d::Zero();
  /// lambda |O - V|^2 + sum of squared residuals.
  double energy = 0.0;
  /// Largest |n . O + c - target|.
  double max_residual = 0.0;
};

SingleSolve solve_single(std::span<const OffsetPlane> planes,
                         const Vec3d& anchor, double lambda, double tolerance);

/// One neighbourhood triangle as seen by the clustering step.
struct NeighborPlane {
  int triangle = -1;
  Vec3d unit_normal = Vec3d::UnitZ();
  /// Exact supporting plane (unnormalised normal).
  RPlane exact;
  double area = 0.0;
  Rational distance;
};

struct PlaneGroup {
  OffsetPlane plane;
  std::vector<int> members;  // triangle ids
  double area = 0.0;
  /// Common distance of the members, or their area-weighted mean.
  Rational distance;
  /// Exact unit-normal plane when every member shares one plane whose
  /// normal has rational length and one distance.
  bool exact = false;
  RPoint exact_normal;
  Rational exact_offset;
};

/// Greedy complete-linkage clustering by normal angle. Throws kInfeasible
/// when more than max_clusters groups remain at the largest angle.
std::vector<PlaneGroup> cluster_planes(std::span<const NeighborPlane> planes,
                                       const Vec3d& anchor,
                                       const SolverConfig& config);

using Mask = uint32_t;

struct OffsetSolution {
  int vertex = -1;    // representative soup vertex
  int position = -1;  // MeshIndex position id
  NeighborhoodKind kind = NeighborhoodKind::kSimpleDisk;
  int raw_planes = 0;
  std::vector<PlaneGroup> planes;
  std::vector<Mask> masks;
  std::vector<RPoint> points;
  std::vector<Vec3d> float_points;
  std::vector<double> energies;
  /// Sorted triangle ids covered by each group.
  std::vector<std::vector<int>> group_triangles;

  int K() const { return static_cast<int>(masks.size()); }
  bool group_contains(int k, int triangle) const;
};

struct PartitionResult {
  std::vector<Mask> masks;  // ascending
  std::vector<SingleSolve> solves;
  int groups = 0;
  double energy = 0.0;  // sum in mask order
};

/// Minimum (group count, energy) partition of the planes into feasible
/// groups by dynamic programming over bitmasks.
PartitionResult partition_planes(std::span<const OffsetPlane> planes,
                                 const Vec3d& anchor, double lambda,
                                 double tolerance);

/// Offset points for one soup vertex. `direction` is +1 or -1 and
/// `diagonal` the bounding-box diagonal l.
OffsetSolution solve_vertex(const MeshIndex& index, int vertex,
                            const SolverConfig& config, double diagonal,
                            int direction);

/// One solution per position of `index`; positions touched only by
/// degenerate triangles get an empty solution.
std::vector<OffsetSolution> solve_all_vertices(const MeshIndex& index,
                                               const SolverConfig& config,
                                               double diagonal, int direction,
                                               int threads);

/// Exact minimum-displacement point on the given planes (unit normals), or
/// false when they are inconsistent.
bool exact_offset_point(const RPoint& anchor,
                        std::span<const RPoint> normals,
                        std::span<const Rational> rhs, RPoint& out);

}  // namespace miter
