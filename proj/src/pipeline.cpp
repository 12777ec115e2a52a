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

#include "miter/pipeline.hpp"

#include <chrono>

#include "miter/error.hpp"
#include "miter/winding.hpp"

namespace miter {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

void apply_distances(TriangleSoup& mesh, const DistanceSpec& spec, double diagonal) {
  const Rational l(diagonal);
  switch (spec.kind) {
    case DistanceSpec::Kind::kAbsolute:
      mesh.set_uniform_distance(spec.value);
      break;
    case DistanceSpec::Kind::kPercent:
      mesh.set_uniform_distance(spec.value * l / 100);
      break;
    case DistanceSpec::Kind::kPerFace:
      mesh.per_face_distance = load_distances(spec.path, mesh.num_triangles());
      break;
    case DistanceSpec::Kind::kLinear: {
      if (spec.axis < 0 || spec.axis > 2)
        throw Error(ErrorKind::kConfig, "axis must be 0, 1 or 2");
      Rational lo = mesh.vertices[0][spec.axis], hi = lo;
      for (const RPoint& v : mesh.vertices) {
        if (v[spec.axis] < lo) lo = v[spec.axis];
        if (v[spec.axis] > hi) hi = v[spec.axis];
      }
      const Rational span = hi - lo;
      mesh.per_face_distance.resize(mesh.num_triangles());
      for (size_t t = 0; t < mesh.num_triangles(); ++t) {
        const Rational c = centroid(mesh.triangle(static_cast<int>(t)))[spec.axis];
        const Rational s = sgn(span) > 0 ? Rational((c - lo) / span) : Rational(0);
        const Rational pct = spec.low_percent + s * (spec.high_percent - spec.low_percent);
        mesh.per_face_distance[t] = pct * l / 100;
      }
      break;
    }
  }
}

RunResult run_offset(const TriangleSoup& mesh, const RunConfig& config) {
  const Clock::time_point start = Clock::now();
  Clock::time_point deadline = Clock::time_point::max();
  if (config.time_limit > 0)
    deadline = start + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(config.time_limit));
  auto check_time = [&](const char* stage) {
    if (Clock::now() > deadline)
      throw Error(ErrorKind::kTimeLimit, std::string("time limit reached after ") + stage);
  };

  if (mesh.empty()) throw Error(ErrorKind::kEmptyInput, "mesh has no triangles");
  validate(mesh);
  RunResult result;
  result.diagonal = bbox_diagonal(mesh).diagonal;
  const double floor = config.min_relative_distance * result.diagonal;
  for (const Rational& d : mesh.per_face_distance) {
    if (d.get_d() < floor)
      throw Error(ErrorKind::kConfig,
                  "offset distance " + std::to_string(d.get_d()) +
                      " is below the reliable minimum of 1e-6 of the bounding "
                      "box diagonal (" + std::to_string(floor) + ")");
  }
  if (config.direction != 1 && config.direction != -1)
    throw Error(ErrorKind::kConfig, "direction must be +1 or -1");

  const MeshIndex index(mesh);
  if (config.validate_input) result.input_report = validate_mesh(weld(mesh));

  Clock::time_point t = Clock::now();
  result.solutions = solve_all_vertices(index, config.solver, result.diagonal,
                                        config.direction, config.threads);
  result.times.offsets = seconds_since(t);
  check_time("vertex offsets");

  t = Clock::now();
  result.volumes = build_offset_volumes(index, result.solutions, config.threads);
  result.times.volumes = seconds_since(t);
  check_time("offset volumes");

  t = Clock::now();
  std::vector<RTriangle> input_triangles;
  for (size_t i = 0; i < mesh.num_triangles(); ++i)
    if (!index.degenerate(static_cast<int>(i)))
      input_triangles.push_back(mesh.triangle(static_cast<int>(i)));
  const SideOracle side(std::move(input_triangles), 1e-9 * result.diagonal);
  ExtractionConfig xc = config.extraction;
  xc.threads = config.threads;
  xc.deadline = deadline;
  const Extractor extractor(result.volumes, index, side, config.direction,
                            result.diagonal, xc);
  ExtractionResult extracted = extractor.extract();
  result.counters = extracted.counters;
  result.open_boundary = extracted.open_boundary;
  result.times.extraction = seconds_since(t);
  check_time("extraction");

  t = Clock::now();
  if (extracted.triangles.empty()) {
    result.status = RunStatus::kVanished;
  } else {
    result.mesh = weld(extracted.triangles, config.direction < 0);
    result.cleanup = finalize(result.mesh);
  }
  result.times.topology = seconds_since(t);
  result.seconds = seconds_since(start);
  return result;
}

}  // namespace miter
