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

#include "miter/vertex_offset.hpp"

#include <Eigen/QR>
#include <cmath>
#include <deque>
#include <numbers>

#include "miter/error.hpp"
#include "miter/parallel.hpp"

namespace miter {

bool OffsetSolution::group_contains(int k, int triangle) const {
  const auto& tris = group_triangles[k];
  return std::binary_search(tris.begin(), tris.end(), triangle);
}

SingleSolve solve_single(std::span<const OffsetPlane> planes,
                         const Vec3d& anchor, double lambda, double tolerance) {
  const int m = static_cast<int>(planes.size());
  Eigen::MatrixXd a(m + 3, 3);
  Eigen::VectorXd b(m + 3);
  const double root = std::sqrt(lambda);
  a.topRows(3) = root * Eigen::Matrix3d::Identity();
  b.head(3).setZero();
  // Solve for the displacement from the anchor to keep magnitudes small.
  Eigen::VectorXd r(m);
  for (int j = 0; j < m; ++j) {
    const OffsetPlane& p = planes[j];
    a.row(3 + j) = p.normal.transpose();
    r[j] = p.target - (p.normal.dot(anchor) + p.offset);
    b[3 + j] = r[j];
  }
  const Vec3d x = a.householderQr().solve(b);
  SingleSolve out;
  out.point = anchor + x;
  out.energy = lambda * x.squaredNorm();
  for (int j = 0; j < m; ++j) {
    const double res = planes[j].normal.dot(x) - r[j];
    out.energy += res * res;
    out.max_residual = std::max(out.max_residual, std::abs(res));
  }
  out.feasible = x.allFinite() && out.max_residual <= tolerance;
  return out;
}

namespace {

bool same_plane(const RPlane& a, const RPlane& b) {
  int axis = 0;
  while (axis < 3 && sgn(a.normal[axis]) == 0) ++axis;
  if (axis == 3 || sgn(b.normal[axis]) == 0) return false;
  const Rational k = b.normal[axis] / a.normal[axis];
  if (sgn(k) <= 0) return false;
  return b.normal == RPoint(a.normal * k) && b.offset == a.offset * k;
}

PlaneGroup make_group(std::span<const NeighborPlane> planes,
                      const std::vector<int>& members, const Vec3d& anchor) {
  PlaneGroup g;
  Vec3d normal = Vec3d::Zero();
  Vec3d point = Vec3d::Zero();
  double weighted_d = 0.0;
  bool equal_d = true;
  for (int i : members) {
    const NeighborPlane& p = planes[i];
    const double w = p.area;
    normal += w * p.unit_normal;
    const double c = p.exact.unit_offset;
    point += w * (anchor - (p.unit_normal.dot(anchor) + c) * p.unit_normal);
    weighted_d += w * p.distance.get_d();
    g.area += w;
    g.members.push_back(p.triangle);
    if (p.distance != planes[members[0]].distance) equal_d = false;
  }
  normal.normalize();
  point /= g.area;
  g.plane.normal = normal;
  g.plane.offset = -normal.dot(point);
  g.distance = equal_d ? planes[members[0]].distance
                       : from_double(weighted_d / g.area);
  std::sort(g.members.begin(), g.members.end());

  // Exact representative when all members share one rational-length plane.
  const RPlane& first = planes[members[0]].exact;
  bool exact = equal_d;
  for (size_t k = 1; k < members.size() && exact; ++k)
    exact = same_plane(first, planes[members[k]].exact);
  Rational len;
  if (exact && exact_sqrt(first.normal.dot(first.normal), len)) {
    g.exact = true;
    g.exact_normal = first.normal / len;
    g.exact_offset = first.offset / len;
    g.plane.normal = to_double(g.exact_normal);
    g.plane.offset = g.exact_offset.get_d();
  }
  return g;
}

struct Cost {
  int groups = 0;
  double energy = 0.0;
  bool operator<(const Cost& o) const {
    return groups != o.groups ? groups < o.groups : energy < o.energy;
  }
};

}  // namespace

std::vector<PlaneGroup> cluster_planes(std::span<const NeighborPlane> planes,
                                       const Vec3d& anchor,
                                       const SolverConfig& config) {
  if (planes.empty())
    throw Error(ErrorKind::kInvalidArgument, "no planes to cluster");
  for (double degrees = config.merge_degrees;;) {
    const double min_cos = std::cos(degrees * std::numbers::pi / 180.0);
    std::vector<std::vector<int>> clusters;
    for (size_t i = 0; i < planes.size(); ++i) {
      bool placed = false;
      for (auto& c : clusters) {
        bool close = true;
        for (int j : c)
          if (planes[i].unit_normal.dot(planes[j].unit_normal) < min_cos)
            close = false;
        if (close) {
          c.push_back(static_cast<int>(i));
          placed = true;
          break;
        }
      }
      if (!placed) clusters.push_back({static_cast<int>(i)});
    }
    if (static_cast<int>(clusters.size()) <= config.max_clusters) {
      std::vector<PlaneGroup> groups;
      for (const auto& c : clusters) groups.push_back(make_group(planes, c, anchor));
      return groups;
    }
    if (degrees >= config.max_merge_degrees)
      throw Error(ErrorKind::kInfeasible,
                  std::to_string(clusters.size()) +
                      " plane groups remain at the largest merge angle");
    degrees = std::min(degrees * 2.0, config.max_merge_degrees);
  }
}

PartitionResult partition_planes(std::span<const OffsetPlane> planes,
                                 const Vec3d& anchor, double lambda,
                                 double tolerance) {
  const int n = static_cast<int>(planes.size());
  if (n == 0 || n > 20)
    throw Error(ErrorKind::kInvalidArgument, "plane count out of range");
  const Mask full = (Mask(1) << n) - 1;
  std::vector<SingleSolve> solved(full + 1);
  std::vector<Cost> best(full + 1);
  std::vector<Mask> split(full + 1, 0);
  std::vector<OffsetPlane> subset;
  for (Mask x = 1; x <= full; ++x) {
    subset.clear();
    for (int j = 0; j < n; ++j)
      if (x >> j & 1) subset.push_back(planes[j]);
    solved[x] = solve_single(subset, anchor, lambda, tolerance);
    if (solved[x].feasible) {
      best[x] = {1, solved[x].energy};
      continue;
    }
    const Mask low = x & (~x + 1);
    const Mask rest = x ^ low;
    bool have = false;
    // Ascending submasks r of rest; the low bit always stays with r.
    for (Mask r = 0;; r = (r - rest) & rest) {
      const Mask sub = low | r;
      if (sub != x) {
        const Cost c{best[sub].groups + best[x ^ sub].groups,
                     best[sub].energy + best[x ^ sub].energy};
        if (!have || c < best[x]) {
          best[x] = c;
          split[x] = sub;
          have = true;
        }
      }
      if (r == rest) break;
    }
    if (!have) {
      // A single infeasible plane: cannot happen with lambda > 0.
      throw Error(ErrorKind::kInfeasible, "single plane is infeasible");
    }
  }
  PartitionResult out;
  std::deque<Mask> queue = {full};
  while (!queue.empty()) {
    const Mask x = queue.front();
    queue.pop_front();
    if (split[x] == 0) {
      out.masks.push_back(x);
    } else {
      queue.push_back(split[x]);
      queue.push_back(x ^ split[x]);
    }
  }
  std::sort(out.masks.begin(), out.masks.end());
  for (Mask x : out.masks) {
    out.solves.push_back(solved[x]);
    out.energy += solved[x].energy;
  }
  out.groups = static_cast<int>(out.masks.size());
  return out;
}

bool exact_offset_point(const RPoint& anchor, std::span<const RPoint> normals,
                        std::span<const Rational> rhs, RPoint& out) {
  // Row-reduce [N | r] where r = rhs - N anchor.
  const size_t m = normals.size();
  std::vector<std::array<Rational, 4>> rows(m);
  for (size_t i = 0; i < m; ++i) {
    for (int k = 0; k < 3; ++k) rows[i][k] = normals[i][k];
    rows[i][3] = rhs[i] - normals[i].dot(anchor);
  }
  size_t rank = 0;
  for (int col = 0; col < 3 && rank < m; ++col) {
    size_t pivot = rank;
    while (pivot < m && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == m) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t i = 0; i < m; ++i) {
      if (i == rank || sgn(rows[i][col]) == 0) continue;
      const Rational f = rows[i][col] / rows[rank][col];
      for (int k = col; k < 4; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  for (size_t i = rank; i < m; ++i)
    if (sgn(rows[i][3]) != 0) return false;
  // Minimum-norm displacement x = R^T (R R^T)^-1 r over independent rows.
  const int k = static_cast<int>(rank);
  std::vector<std::vector<Rational>> g(k, std::vector<Rational>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      g[i][j] = rows[i][0] * rows[j][0] + rows[i][1] * rows[j][1] +
                rows[i][2] * rows[j][2];
    g[i][k] = rows[i][3];
  }
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    while (pivot < k && sgn(g[pivot][col]) == 0) ++pivot;
    if (pivot == k) return false;
    std::swap(g[col], g[pivot]);
    for (int i = 0; i < k; ++i) {
      if (i == col || sgn(g[i][col]) == 0) continue;
      const Rational f = g[i][col] / g[col][col];
      for (int j = col; j <= k; ++j) g[i][j] -= f * g[col][j];
    }
  }
  RPoint x = RPoint::Zero();
  for (int i = 0; i < k; ++i) {
    const Rational y = g[i][k] / g[i][i];
    for (int c = 0; c < 3; ++c) x[c] += rows[i][c] * y;
  }
  out = anchor + x;
  return true;
}

OffsetSolution solve_vertex(const MeshIndex& index, int vertex,
                            const SolverConfig& config, double diagonal,
                            int direction) {
  const TriangleSoup& mesh = index.mesh();
  OffsetSolution sol;
  sol.vertex = vertex;
  sol.position = index.position_of(vertex);
  const RPoint& anchor = index.position(sol.position);
  const Vec3d anchor_d = to_double(anchor);
  const LocalNeighborhood nb =
      local_neighborhood(index, vertex, from_double(config.epsilon * diagonal));
  sol.kind = nb.kind;

  std::vector<NeighborPlane> planes;
  for (int t : nb.triangles) {
    if (index.degenerate(t)) continue;
    const RTriangle tri = mesh.triangle(t);
    NeighborPlane p;
    p.triangle = t;
    p.exact = plane_of(tri[0], tri[1], tri[2]);
    p.unit_normal = p.exact.unit_normal;
    p.area = 0.5 * to_double(p.exact.normal).norm();
    p.distance = mesh.per_face_distance[t];
    planes.push_back(std::move(p));
  }
  sol.raw_planes = static_cast<int>(planes.size());
  if (planes.empty()) return sol;
  sol.planes = cluster_planes(planes, anchor_d, config);

  std::vector<OffsetPlane> rows;
  for (PlaneGroup& g : sol.planes) {
    g.plane.target = direction * g.distance.get_d();
    rows.push_back(g.plane);
  }
  const double tolerance = config.alpha * diagonal;
  const PartitionResult part =
      partition_planes(rows, anchor_d, config.lambda, tolerance);
  sol.masks = part.masks;
  for (size_t k = 0; k < part.masks.size(); ++k) {
    const Mask x = part.masks[k];
    const SingleSolve& s = part.solves[k];
    sol.float_points.push_back(s.point);
    sol.energies.push_back(s.energy);
    std::vector<int> tris;
    std::vector<RPoint> normals;
    std::vector<Rational> rhs;
    bool exact = true;
    for (size_t j = 0; j < sol.planes.size(); ++j) {
      if (!(x >> j & 1)) continue;
      const PlaneGroup& g = sol.planes[j];
      tris.insert(tris.end(), g.members.begin(), g.members.end());
      exact = exact && g.exact;
      if (g.exact) {
        normals.push_back(g.exact_normal);
        rhs.push_back(Rational(direction) * g.distance - g.exact_offset);
      }
    }
    std::sort(tris.begin(), tris.end());
    sol.group_triangles.push_back(std::move(tris));
    RPoint point = from_double(s.point);
    RPoint refined;
    if (exact && exact_offset_point(anchor, normals, rhs, refined) &&
        (to_double(refined) - s.point).norm() <= tolerance)
      point = refined;
    sol.points.push_back(point);
  }
  return sol;
}

std::vector<OffsetSolution> solve_all_vertices(const MeshIndex& index,
                                               const SolverConfig& config,
                                               double diagonal, int direction,
                                               int threads) {
  // Representative soup vertex per position, among non-degenerate corners.
  std::vector<int> rep(index.num_positions(), -1);
  const TriangleSoup& mesh = index.mesh();
  for (size_t t = 0; t < mesh.num_triangles(); ++t) {
    if (index.degenerate(static_cast<int>(t))) continue;
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.triangles[t][k];
      int& r = rep[index.position_of(v)];
      if (r < 0 || v < r) r = v;
    }
  }
  std::vector<OffsetSolution> out(index.num_positions());
  parallel_for(out.size(), threads, [&](size_t pid) {
    if (rep[pid] < 0) {
      out[pid].position = static_cast<int>(pid);
      return;
    }
    out[pid] = solve_vertex(index, rep[pid], config, diagonal, direction);
  });
  return out;
}

}  // namespace miter
