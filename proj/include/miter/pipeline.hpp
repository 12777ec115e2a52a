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

#include <optional>
#include <string>
#include <vector>

#include "miter/extraction.hpp"
#include "miter/offset_volumes.hpp"
#include "miter/topology.hpp"
#include "miter/vertex_offset.hpp"

namespace miter {

/// How offset distances are assigned to triangles.
struct DistanceSpec {
  enum class Kind { kAbsolute, kPercent, kPerFace, kLinear };
  Kind kind = Kind::kPercent;
  /// Absolute value, or percent of the diagonal.
  Rational value = 0;
  /// Per-face sidecar path.
  std::string path;
  /// Linear field: percent at the low and high end of `axis`.
  Rational low_percent = 0, high_percent = 0;
  int axis = 2;
};

/// Writes per_face_distance. Percent values resolve against `diagonal`.
void apply_distances(TriangleSoup& mesh, const DistanceSpec& spec, double diagonal);

struct RunConfig {
  int direction = 1;
  SolverConfig solver;
  ExtractionConfig extraction;
  int threads = 1;
  /// Seconds; 0 disables the limit.
  double time_limit = 0.0;
  /// Smallest accepted distance as a fraction of the diagonal.
  double min_relative_distance = 1e-6;
  /// Also validate the input mesh (self-intersections etc.).
  bool validate_input = false;
};

enum class RunStatus { kOk, kVanished };

struct StageTimes {
  double offsets = 0, volumes = 0, extraction = 0, topology = 0;
};

struct RunResult {
  RunStatus status = RunStatus::kOk;
  WeldedMesh mesh;
  FinalizeResult cleanup;
  std::optional<ValidityReport> input_report;
  ExtractionCounters counters;
  bool open_boundary = false;
  double diagonal = 0.0;
  std::vector<OffsetSolution> solutions;
  OffsetVolumeSet volumes;
  StageTimes times;
  double seconds = 0.0;
};

/// Vertex offsets, offset volumes, extraction and cleanup. Throws Error with
/// kConfig for distances under the reliability floor and kTimeLimit when the
/// limit is hit.
RunResult run_offset(const TriangleSoup& mesh, const RunConfig& config);

}  // namespace miter
