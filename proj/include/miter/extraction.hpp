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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <vector>

#include "miter/aabb.hpp"
#include "miter/offset_volumes.hpp"
#include "miter/triangulate.hpp"
#include "miter/winding.hpp"

namespace miter {

enum class FaceClass {
  kEnclosed,   // T_I: inside another polyhedron
  kShared,     // T_II: on a facet of another polyhedron, facing into it
  kWrongSide,  // T_III: on the wrong side of the input
  kInput,      // T_IV: an input triangle
  kOutput,     // T_V
};

const char* face_class_name(FaceClass c);

struct ClassifiedTriangle {
  RTriangle triangle;
  int polyhedron = -1;
  int facet = -1;
  FaceClass face_class = FaceClass::kOutput;
};

struct ExtractionConfig {
  /// Deferred-set iteration.
  bool deferral = true;
  /// Midpoint-subdivision early reject for facets near many polyhedra.
  bool early_reject = true;
  int early_reject_threshold = 5;
  /// Group work by spatial cells.
  bool use_grid = true;
  /// Cell edge override in model units; 0 picks automatically.
  double grid_cell = 0.0;
  int threads = 1;
  /// Work past this point throws kTimeLimit.
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
};

struct ExtractionCounters {
  uint64_t tri_tri_calls = 0;
  uint64_t inside_tests = 0;
  uint64_t iterations = 0;
  uint64_t early_rejected = 0;
  uint64_t facets_resolved = 0;
};

struct ExtractionResult {
  std::vector<ClassifiedTriangle> triangles;  // T_V only, facet order
  ExtractionCounters counters;
  /// Deferred facets remained while the accepted set still had boundary.
  bool open_boundary = false;
};

/// Cube cells over the dilated input box. Each facet belongs to the cell
/// holding its centroid.
class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(const Box& domain, double cell);

  /// Cell edge max(2 max_d, l * T^(-1/3)), grown until at most 64^3 cells.
  static double auto_cell(double diagonal, double max_distance,
                          size_t num_triangles);

  double cell() const { return cell_; }
  std::array<int, 3> dims() const { return dims_; }
  size_t num_cells() const {
    return static_cast<size_t>(dims_[0]) * dims_[1] * dims_[2];
  }
  int cell_of(const Vec3d& p) const;
  /// Every cell a box touches.
  std::vector<int> cells_touching(const Box& box) const;

 private:
  Vec3d origin_ = Vec3d::Zero();
  double cell_ = 1.0;
  std::array<int, 3> dims_ = {1, 1, 1};
};

class Extractor {
 public:
  Extractor(const OffsetVolumeSet& volumes, const MeshIndex& index,
            const SideOracle& side, int direction, double diagonal,
            ExtractionConfig config);

  size_t num_facets() const { return facets_.size(); }
  std::pair<int, int> facet(size_t g) const { return facets_[g]; }
  RTriangle facet_triangle(size_t g) const;

  /// Pieces of facet g cut by every other polyhedron's facets.
  std::vector<RTriangle> resolve_facet(size_t g) const;

  /// Class of a piece lying on facet g.
  FaceClass classify(size_t g, const RTriangle& piece) const;

  /// True when the point c + e n + e^2 u + e^3 w (e -> 0+) lies inside
  /// polyhedron b, or on a same-facing facet of b when b precedes `owner`.
  bool covers(int b, int owner, const RPoint& c, const RPoint& n,
              const RPoint& u, const RPoint& w, bool* shared) const;

  /// Polyhedra other than g's whose boxes meet the facet's box.
  std::vector<int> nearby_polyhedra(size_t g) const;

  struct EarlyReject {
    std::array<RTriangle, 4> parts;
    std::array<int, 4> chosen = {-1, -1, -1, -1};
    std::array<bool, 4> dropped = {false, false, false, false};
    bool all_dropped() const {
      return dropped[0] && dropped[1] && dropped[2] && dropped[3];
    }
  };
  /// Midpoint subdivision of facet g; each part picks the polyhedron that
  /// holds most of its 16 samples and is dropped when that polyhedron
  /// covers it entirely.
  EarlyReject early_reject_subdivide(size_t g,
                                     const std::vector<int>& candidates) const;

  /// Extraction with the configured speedups.
  ExtractionResult extract() const;
  /// Every facet resolved and classified.
  ExtractionResult brute_force() const;

  const SpatialGrid& grid() const { return grid_; }

 private:
  std::vector<ClassifiedTriangle> process(size_t g) const;
  bool piece_inside_input(size_t g, const RTriangle& piece) const;

  const OffsetVolumeSet& volumes_;
  const MeshIndex& index_;
  const SideOracle& side_;
  int direction_;
  double diagonal_;
  ExtractionConfig config_;
  std::vector<std::pair<int, int>> facets_;  // (polyhedron, facet)
  std::vector<bool> input_facet_;
  AabbTree facet_tree_;
  AabbTree poly_tree_;
  SpatialGrid grid_;
  mutable std::atomic<uint64_t> tri_tri_calls_{0};
  mutable std::atomic<uint64_t> inside_tests_{0};
};

}  // namespace miter
