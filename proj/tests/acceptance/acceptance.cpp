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

// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "harness.hpp"
#include "miter/metrics.hpp"
#include "miter/parallel.hpp"
#include "miter/pipeline.hpp"
#include "oracles.hpp"

namespace miter {
namespace {

using Clock = std::chrono::steady_clock;

const int kThreads = std::max(2, default_thread_count());

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RunResult offset(TriangleSoup mesh, const Rational& d, int direction, int threads = 1) {
  mesh.set_uniform_distance(d);
  RunConfig config;
  config.direction = direction;
  config.threads = threads;
  config.extraction.threads = threads;
  return run_offset(mesh, config);
}

std::set<RPoint, RPointLess> vertex_set(const WeldedMesh& m) {
  return {m.vertices.begin(), m.vertices.end()};
}

std::set<RPoint, RPointLess> box_corners(const Rational& lo, const Rational& hi,
                                         const Rational& top) {
  std::set<RPoint, RPointLess> out;
  for (int i = 0; i < 8; ++i)
    out.insert(RPoint(i & 1 ? hi : lo, i & 2 ? hi : lo, i & 4 ? top : lo));
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Tally {
  int evaluated = 0, failed = 0;
  void report(int id, const char* title, bool pass, const std::string& detail) {
    ++evaluated;
    failed += !pass;
    std::printf("criterion %2d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", title, detail.c_str());
    std::fflush(stdout);
  }
};

void cube_golden(Tally& t) {
  const auto t0 = Clock::now();
  const RunResult r = offset(testing::unit_cube(), Rational(1, 10), 1);
  const double secs = seconds_since(t0);
  const Rational lo(-1, 10), hi(11, 10);
  const bool corners = vertex_set(r.mesh) == box_corners(lo, hi, hi) && r.mesh.vertices.size() == 8;
  // Face-region samples: points whose closest input point is inside a face.
  const SurfaceMesh in = SurfaceMesh::from(weld(testing::unit_cube()));
  const SurfaceMesh out = SurfaceMesh::from(r.mesh);
  SamplerConfig sc;
  sc.density = 1e5;
  const SurfaceSamples s = sample_surface(out, r.diagonal, sc);
  const DistanceQuery q(in);
  double worst = 0;
  size_t face = 0;
  for (const Vec3d& p : s.points) {
    int inside = 0;
    for (int k = 0; k < 3; ++k) inside += p[k] > 0 && p[k] < 1;
    if (inside != 2) continue;
    ++face;
    worst = std::max(worst, std::abs(q.query(p).plane_distance - 0.1));
  }
  const ValidityReport& v = r.cleanup.report;
  const bool pass = v.watertight && v.self_intersections == 0 && corners && face > 1000 &&
                    worst <= 1e-9 && secs < 5.0;
  t.report(1, "cube golden", pass,
           std::string(corners ? "8 mitered corners" : "corner set differs") +
               ", watertight=" + (v.watertight ? "yes" : "no") +
               ", self-intersections=" + std::to_string(v.self_intersections) +
               ", face-region |H_plane-0.1| max " + fmt("%.2e", worst) + " over " +
               std::to_string(face) + " samples, " + fmt("%.3f s", secs));
}

void inward_vanish(Tally& t) {
  const RunResult gone = offset(testing::unit_cube(), Rational(3, 5), -1);
  const RunResult small = offset(testing::unit_cube(), Rational(2, 5), -1);
  const bool vanished = gone.status == RunStatus::kVanished && gone.mesh.empty();
  const bool cube = small.status == RunStatus::kOk &&
                    vertex_set(small.mesh) == box_corners(Rational(2, 5), Rational(3, 5), Rational(3, 5)) &&
                    small.cleanup.report.watertight;
  t.report(2, "inward vanish", vanished && cube,
           std::string("d=0.6 ") + (vanished ? "vanished" : "did not vanish") + ", d=0.4 " +
               (cube ? "0.2-cube" : "unexpected mesh"));
}

void dp_optimality(Tally& t) {
  std::mt19937_64 rng(20261016);
  const Vec3d anchor(0.3, -0.2, 0.5);
  const double l = std::sqrt(3.0);
  const SolverConfig sc;
  const double tol = sc.alpha * l;
  int equal = 0, alpha_ok = 0, multi = 0;
  const int trials = 100;
  for (int i = 0; i < trials; ++i) {
    const int n = 1 + i % 5;
    const auto ps = testing::random_instance(rng, n);
    const PartitionResult dp = partition_planes(ps, anchor, sc.lambda, tol);
    const auto best = oracle::oracle_partition(ps, anchor, sc.lambda, tol);
    equal += dp.groups == best.groups && dp.energy == best.energy;
    multi += dp.groups > 1;
    bool ok = true;
    for (size_t k = 0; k < dp.masks.size(); ++k)
      for (int j = 0; j < n; ++j)
        if (dp.masks[k] >> j & 1) ok = ok && testing::residual(ps[j], dp.solves[k].point) <= tol;
    alpha_ok += ok;
  }
  t.report(3, "partition optimality", equal == trials && alpha_ok == trials,
           std::to_string(equal) + "/" + std::to_string(trials) + " energies equal, " +
               std::to_string(alpha_ok) + "/" + std::to_string(trials) + " pass the alpha check, " +
               std::to_string(multi) + " need several groups");
}

struct ModelRun {
  std::string name;
  double fraction = 0;
  size_t input_triangles = 0, output_triangles = 0;
};

void speedup_soundness(Tally& t, std::vector<ModelRun>& runs) {
  bool geometry = true;
  unsigned long brute_calls = 0, fast_calls = 0;
  double min_ratio = 1e300;
  std::string min_name, mismatch;
  for (auto [name, mesh] : testing::corpus()) {
    for (double f : {0.001, 0.005, 0.01}) {
      const auto s = testing::offset_stack(mesh, testing::relative_distance(mesh, f), 1, kThreads);
      ExtractionConfig c;
      c.threads = kThreads;
      const ExtractionResult fast = s->extractor(c).extract();
      const ExtractionResult brute = s->extractor(c).brute_force();
      const auto a = testing::triangles_of(fast), b = testing::triangles_of(brute);
      const double area_a = oracle::exact_area(a), area_b = oracle::exact_area(b);
      const bool same = std::abs(area_a - area_b) <= 1e-12 * area_b &&
                        oracle::membership_mismatches(a, b, 10000, 11) == 0 &&
                        oracle::membership_mismatches(b, a, 10000, 12) == 0;
      if (!same) {
        geometry = false;
        mismatch += " " + name + "@" + fmt("%g", f);
      }
      if (f == 0.01) {
        brute_calls += brute.counters.tri_tri_calls;
        fast_calls += fast.counters.tri_tri_calls;
        const double ratio = double(brute.counters.tri_tri_calls) /
                             std::max<double>(1, fast.counters.tri_tri_calls);
        if (ratio < min_ratio) {
          min_ratio = ratio;
          min_name = name;
        }
      }
      WeldedMesh w = weld(fast.triangles, false);
      finalize(w);
      runs.push_back({name, f, mesh.num_triangles(), w.triangles.size()});
    }
  }
  const double ratio = double(brute_calls) / std::max<double>(1, fast_calls);
  t.report(4, "speedup soundness", geometry && ratio >= 2.0,
           std::string(geometry ? "fast == brute on every run" : "mismatch:" + mismatch) +
               ", tri-tri calls at 1%: " + std::to_string(brute_calls) + " -> " +
               std::to_string(fast_calls) + " (" + fmt("%.2fx", ratio) + " overall, lowest " +
               fmt("%.2fx", min_ratio) + " on " + min_name + ")");
}

void feature_preservation(Tally& t) {
  bool pass = true;
  std::string detail;
  for (const char* name : {"cube", "box", "l_bracket", "prism_345", "hex_prism"}) {
    const TriangleSoup mesh = testing::named(name);
    const RunResult r = offset(mesh, testing::relative_distance(mesh, 0.01), 1, kThreads);
    const double spacing = 1e-3 * r.diagonal;
    const FeatureLineSet fi = detect_features(SurfaceMesh::from(weld(mesh)), 30, spacing);
    const FeatureLineSet fo = detect_features(SurfaceMesh::from(r.mesh), 30, spacing);
    const MetricValue a = d_angle(fo, fi);
    const bool ok = a.defined && a.value <= 1e-6;
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : ", ") + name + " " + fmt("%.3g", a.value);
  }
  t.report(5, "feature preservation", pass, "D_angle(Mo,Mi) rad: " + detail);
}

void robustness(Tally& t) {
  bool pass = true;
  std::string detail;
  for (const char* name : {"two_cones", "open_cube", "two_cubes", "fin"}) {
    const TriangleSoup mesh = testing::named(name);
    const Rational d = testing::relative_distance(mesh, 0.01);
    for (int dir : {1, -1}) {
      std::string status;
      try {
        const RunResult r = offset(mesh, d, dir, kThreads);
        const ValidityReport& v = r.cleanup.report;
        bool ok = r.status == RunStatus::kVanished || v.self_intersections == 0;
        status = std::to_string(v.self_intersections) + " si";
        if (std::string(name) == "open_cube") {
          ok = ok && !v.watertight && v.boundary_edges > 0;
          status += ", open with " + std::to_string(v.boundary_edges) + " boundary edges";
        }
        if (std::string(name) == "fin" && dir == 1) {
          const double area = oracle::exact_area(testing::triangles_of(mesh)) / 2;
          const double volume =
              std::abs(testing::signed_volume(r.mesh.vertices, r.mesh.triangles).get_d());
          const double expect = area * 2 * d.get_d();
          ok = ok && v.watertight && std::abs(volume - expect) <= 0.01 * expect;
          status += ", slab volume " + fmt("%.6g", volume) + " vs " + fmt("%.6g", expect);
        }
        pass = pass && ok;
      } catch (const std::exception& e) {
        pass = false;
        status = std::string("threw: ") + e.what();
      }
      detail += std::string(detail.empty() ? "" : "; ") + name + (dir > 0 ? " out " : " in ") + status;
    }
  }
  t.report(6, "robustness suite", pass, detail);
}

void non_uniform(Tally& t) {
  TriangleSoup mesh = testing::unit_cube();
  mesh.set_uniform_distance(Rational(1, 10));
  int top = 0;
  for (size_t f = 0; f < mesh.num_triangles(); ++f) {
    const RTriangle tri = mesh.triangle(static_cast<int>(f));
    if (tri[0][2] == 1 && tri[1][2] == 1 && tri[2][2] == 1) {
      mesh.per_face_distance[f] = Rational(1, 5);
      ++top;
    }
  }
  const RunResult r = run_offset(mesh, RunConfig{});
  const bool exact = top == 2 && r.mesh.vertices.size() == 8 &&
                     vertex_set(r.mesh) == box_corners(Rational(-1, 10), Rational(11, 10), Rational(6, 5));
  t.report(7, "non-uniform offset", exact && r.cleanup.report.watertight,
           exact ? "box [-0.1,1.1]^2 x [-0.1,1.2] exactly" : "vertex set differs");
}

void element_economy(Tally& t, const std::vector<ModelRun>& runs) {
  double worst = 0;
  std::string where;
  for (const ModelRun& m : runs) {
    const double ratio = double(m.output_triangles) / double(m.input_triangles);
    if (ratio > worst) {
      worst = ratio;
      where = m.name + "@" + fmt("%g", m.fraction);
    }
  }
  t.report(8, "element-count economy", !runs.empty() && worst <= 5.0,
           std::to_string(runs.size()) + " runs, largest output/input " + fmt("%.2f", worst) +
               " (" + where + ")");
}

void determinism(Tally& t) {
  int same = 0, total = 0;
  std::string diff;
  for (auto [name, mesh] : testing::corpus()) {
    for (int dir : {1, -1}) {
      const Rational d = testing::relative_distance(mesh, 0.01);
      const RunResult a = offset(mesh, d, dir, 1);
      const RunResult b = offset(mesh, d, dir, kThreads);
      ++total;
      if (format_obj(a.mesh.vertices, a.mesh.triangles) ==
              format_obj(b.mesh.vertices, b.mesh.triangles) &&
          format_rational_obj(a.mesh.vertices, a.mesh.triangles) ==
              format_rational_obj(b.mesh.vertices, b.mesh.triangles)) {
        ++same;
      } else {
        diff += " " + name;
      }
    }
  }
  t.report(9, "determinism", same == total,
           std::to_string(same) + "/" + std::to_string(total) + " runs byte-identical at 1 and " +
               std::to_string(kThreads) + " threads" + (diff.empty() ? "" : ", differ:" + diff));
}

void export_warning(Tally& t) {
  long exact_total = 0;
  int flagged = 0, runs = 0;
  std::string detail;
  // Far from the origin six digits leave about 0.1 of resolution, which is
  // coarse next to d.
  const RPoint shift(12345, -6789, 4321);
  for (auto [name, mesh] : testing::corpus()) {
    for (RPoint& p : mesh.vertices) p += shift;
    const RunResult r = offset(mesh, testing::relative_distance(mesh, 1e-4), 1, kThreads);
    ++runs;
    exact_total += r.cleanup.report.self_intersections;
    const long q = quantized_self_intersections(r.mesh, 6);
    if (q > 0) {
      ++flagged;
      detail += " " + name + "=" + std::to_string(q);
    }
  }
  t.report(10, "export warning", exact_total == 0,
           "rational validation " + std::to_string(exact_total) + " pairs over " +
               std::to_string(runs) + " runs; 6-digit export flags " + std::to_string(flagged) +
               " models" + (detail.empty() ? "" : ":" + detail));
}

}  // namespace
}  // namespace miter

int main() {
  using namespace miter;
  Tally t;
  std::vector<ModelRun> runs;
  const std::vector<std::function<void()>> steps = {
      [&] { cube_golden(t); },
      [&] { inward_vanish(t); },
      [&] { dp_optimality(t); },
      [&] { speedup_soundness(t, runs); },
      [&] { feature_preservation(t); },
      [&] { robustness(t); },
      [&] { non_uniform(t); },
      [&] { element_economy(t, runs); },
      [&] { determinism(t); },
      [&] { export_warning(t); },
  };
  int id = 0;
  for (const auto& step : steps) {
    ++id;
    try {
      step();
    } catch (const std::exception& e) {
      t.report(id, "error", false, e.what());
    }
  }
  std::printf("criteria evaluated: %d, failed: %d\n", t.evaluated, t.failed);
  return t.failed == 0 ? 0 : 1;
}
