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

// Command-line driver: offset, corpus, validate, report.
//
// Exit codes:
//   0  success
//   1  internal error
//   2  invalid input or configuration
//   3  the inward offset vanished (empty result)
//   4  time limit reached

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "miter/error.hpp"
#include "miter/metrics.hpp"
#include "miter/parallel.hpp"
#include "miter/pipeline.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace miter;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitVanished = 3;
constexpr int kExitTimeLimit = 4;
constexpr int kReportSchema = 1;

int exit_code(const Error& e) {
  return e.kind() == ErrorKind::kTimeLimit ? kExitTimeLimit : kExitInvalid;
}

struct OffsetOptions {
  std::string input, output, direction = "out";
  std::string dist, dist_pct, per_face, linear;
  int linear_axis = 2;
  double eps = 1e-5, lambda = 1e-9, alpha = 1e-6, merge_deg = 1.0;
  double feature_deg = 30.0;
  bool no_deferral = false, no_early_reject = false, no_grid = false;
  double grid_cell = 0.0;
  int threads = default_thread_count();
  uint64_t seed = 1;
  double time_limit = 0.0;
  int digits = 17;
  std::string rational_out, report, dump_offsets, dump_polyhedra;
  bool metrics = false, timings = false;
  int export_digits = 0;
  double density = 1e4;
};

DistanceSpec distance_spec(const OffsetOptions& o) {
  const int given = !o.dist.empty() + !o.dist_pct.empty() + !o.per_face.empty() +
                    !o.linear.empty();
  if (given != 1)
    throw Error(ErrorKind::kConfig,
                "give exactly one of --dist, --dist-pct, --per-face, --linear");
  auto number = [](const std::string& s) {
    try {
      return parse_decimal(s);
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorKind::kConfig, e.what());
    }
  };
  DistanceSpec spec;
  if (!o.dist.empty()) {
    spec.kind = DistanceSpec::Kind::kAbsolute;
    spec.value = number(o.dist);
  } else if (!o.dist_pct.empty()) {
    spec.kind = DistanceSpec::Kind::kPercent;
    spec.value = number(o.dist_pct);
  } else if (!o.per_face.empty()) {
    spec.kind = DistanceSpec::Kind::kPerFace;
    spec.path = o.per_face;
  } else {
    const size_t comma = o.linear.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorKind::kConfig, "--linear expects LOW,HIGH percents");
    spec.kind = DistanceSpec::Kind::kLinear;
    spec.low_percent = number(o.linear.substr(0, comma));
    spec.high_percent = number(o.linear.substr(comma + 1));
    spec.axis = o.linear_axis;
  }
  return spec;
}

int parse_direction(const std::string& s) {
  if (s == "out" || s == "+1" || s == "1") return 1;
  if (s == "in" || s == "-1") return -1;
  throw Error(ErrorKind::kConfig, "direction must be 'in' or 'out'");
}

json metric(const MetricValue& m) { return m.defined ? json(m.value) : json(nullptr); }

json validity_json(const ValidityReport& r) {
  return {{"watertight", r.watertight},
          {"manifold", r.manifold},
          {"orientation_consistent", r.orientation_consistent},
          {"boundary_edges", r.boundary_edges},
          {"nonmanifold_edges", r.nonmanifold_edges},
          {"self_intersections", r.self_intersections},
          {"zero_area", r.zero_area},
          {"components", r.components},
          {"genus", r.genus},
          {"vertices", r.vertices},
          {"triangles", r.triangles}};
}

json report_json(const MeshReport& r) {
  return {{"H_point(Mo,Mi)", metric(r.h_point_oi)},
          {"H_plane(Mo,Mi)", metric(r.h_plane_oi)},
          {"H_point(Mi,Mo)", metric(r.h_point_io)},
          {"H_plane(Mi,Mo)", metric(r.h_plane_io)},
          {"D_plane(Mo,Mi)", metric(r.d_plane_oi)},
          {"D_point(Mo,Mi)", metric(r.d_point_oi)},
          {"D_angle(Mo,Mi)", metric(r.d_angle_oi)},
          {"D_plane(Mi,Mo)", metric(r.d_plane_io)},
          {"D_point(Mi,Mo)", metric(r.d_point_io)},
          {"D_angle(Mi,Mo)", metric(r.d_angle_io)},
          {"FACE", r.faces}};
}

double mean_distance(const TriangleSoup& mesh) {
  if (mesh.per_face_distance.empty()) return 0.0;
  Rational sum = 0;
  for (const Rational& d : mesh.per_face_distance) sum += d;
  return nearest_double(sum / static_cast<long>(mesh.per_face_distance.size()));
}

json solutions_json(const RunResult& run, const MeshIndex& index) {
  json out = json::array();
  for (size_t pid = 0; pid < run.solutions.size(); ++pid) {
    const OffsetSolution& s = run.solutions[pid];
    json points = json::array();
    for (size_t k = 0; k < s.points.size(); ++k) {
      json tris = s.group_triangles[k];
      points.push_back({{"point",
                         {to_fraction_string(s.points[k][0]),
                          to_fraction_string(s.points[k][1]),
                          to_fraction_string(s.points[k][2])}},
                        {"approx", {s.float_points[k][0], s.float_points[k][1],
                                    s.float_points[k][2]}},
                        {"energy", s.energies[k]},
                        {"triangles", tris}});
    }
    const Vec3d p = to_double(index.position(static_cast<int>(pid)));
    out.push_back({{"position", pid},
                   {"vertex", {p[0], p[1], p[2]}},
                   {"planes", s.raw_planes},
                   {"groups", s.planes.size()},
                   {"offsets", points}});
  }
  return out;
}

int cmd_offset(const OffsetOptions& o) {
  TriangleSoup mesh = load_mesh(o.input);
  const int direction = parse_direction(o.direction);
  mesh.direction = direction;
  const double l = bbox_diagonal(mesh).diagonal;
  apply_distances(mesh, distance_spec(o), l);

  RunConfig config;
  config.direction = direction;
  config.solver.epsilon = o.eps;
  config.solver.lambda = o.lambda;
  config.solver.alpha = o.alpha;
  config.solver.merge_degrees = o.merge_deg;
  config.extraction.deferral = !o.no_deferral;
  config.extraction.early_reject = !o.no_early_reject;
  config.extraction.use_grid = !o.no_grid;
  config.extraction.grid_cell = o.grid_cell;
  config.threads = std::max(1, o.threads);
  config.time_limit = o.time_limit;
  config.validate_input = true;

  const RunResult run = run_offset(mesh, config);
  const bool vanished = run.status == RunStatus::kVanished;
  write_text(o.output, format_obj(run.mesh.vertices, run.mesh.triangles, o.digits));
  if (!o.rational_out.empty())
    write_text(o.rational_out, format_rational_obj(run.mesh.vertices, run.mesh.triangles));

  if (!o.dump_offsets.empty()) {
    const MeshIndex index(mesh);
    write_text(o.dump_offsets, solutions_json(run, index).dump(1));
  }
  if (!o.dump_polyhedra.empty()) {
    std::string text;
    int base = 0;
    for (const ConvexPolyhedron& p : run.volumes.polyhedra) {
      std::ostringstream os;
      for (const RPoint& v : p.vertices) {
        const Vec3d d = to_double(v);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", d[0], d[1], d[2]);
        os << buf;
      }
      for (const TriIndex& f : p.facets)
        os << "f " << base + f[0] + 1 << ' ' << base + f[1] + 1 << ' '
           << base + f[2] + 1 << '\n';
      base += static_cast<int>(p.vertices.size());
      text += os.str();
    }
    write_text(o.dump_polyhedra, text);
  }

  json report = {{"schema", kReportSchema},
                 {"status", vanished ? "vanished" : "ok"},
                 {"input", o.input},
                 {"direction", direction > 0 ? "out" : "in"},
                 {"diagonal", run.diagonal},
                 {"mean_distance", mean_distance(mesh)},
                 {"input_triangles", mesh.num_triangles()},
                 {"output_triangles", run.mesh.triangles.size()},
                 {"output_vertices", run.mesh.vertices.size()},
                 {"polyhedra", run.volumes.polyhedra.size()},
                 {"open_boundary", run.open_boundary}};
  report["counters"] = {{"tri_tri_calls", run.counters.tri_tri_calls},
                        {"inside_tests", run.counters.inside_tests},
                        {"iterations", run.counters.iterations},
                        {"early_rejected", run.counters.early_rejected},
                        {"facets_resolved", run.counters.facets_resolved}};
  report["cleanup"] = {{"filled_loops", run.cleanup.holes.filled_loops},
                       {"open_loops", run.cleanup.holes.open_loops},
                       {"removed_degenerates", run.cleanup.removed_degenerates}};
  if (!vanished) report["validity"] = validity_json(run.cleanup.report);
  if (run.input_report) report["input_validity"] = validity_json(*run.input_report);
  if (o.export_digits > 0 && !vanished) {
    const long n = quantized_self_intersections(run.mesh, o.export_digits);
    report["export_check"] = {{"digits", o.export_digits}, {"self_intersections", n}};
    if (n > 0)
      std::cerr << "warning: rounding to " << o.export_digits
                << " significant digits creates " << n
                << " self-intersecting triangle pairs absent from the exact mesh\n";
  }
  if (o.metrics && !vanished) {
    MetricsConfig mc;
    mc.sampler.seed = o.seed;
    mc.sampler.density = o.density;
    mc.feature_degrees = o.feature_deg;
    mc.threads = config.threads;
    const MeshReport mr = measure(SurfaceMesh::from(weld(mesh)),
                                  SurfaceMesh::from(run.mesh), run.diagonal,
                                  mean_distance(mesh), direction, mc);
    report["metrics"] = report_json(mr);
  }
  if (o.timings) {
    report["seconds"] = {{"offsets", run.times.offsets},
                         {"volumes", run.times.volumes},
                         {"extraction", run.times.extraction},
                         {"topology", run.times.topology},
                         {"total", run.seconds}};
  }
  if (!o.report.empty()) write_text(o.report, report.dump(2) + "\n");
  else std::cout << report.dump(2) << '\n';
  return vanished ? kExitVanished : kExitOk;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

struct CorpusOptions {
  std::string directory, output;
  std::string percents = "0.05,0.1,0.5,1,5";
  std::string directions = "in,out";
  double time_limit = 60.0;
  int threads = default_thread_count();
  uint64_t seed = 1;
  double density = 1e4;
};

std::string fmt(const MetricValue& m) {
  if (!m.defined) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", m.value);
  return buf;
}

int cmd_corpus(const CorpusOptions& o) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(o.directory)) {
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    if (entry.is_regular_file() && (ext == ".obj" || ext == ".off" || ext == ".stl"))
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::ostringstream csv;
  csv << "model,direction,percent,D_plane(Mo,Mi),D_point(Mo,Mi),D_angle(Mo,Mi),"
         "D_plane(Mi,Mo),D_point(Mi,Mo),D_angle(Mi,Mo),SUC,FACE,TIME\n";
  std::vector<std::string> dirs;
  {
    std::stringstream ss(o.directions);
    std::string d;
    while (std::getline(ss, d, ',')) dirs.push_back(d);
  }
  for (const fs::path& file : files) {
    for (const std::string& dir : dirs) {
      for (double pct : parse_list(o.percents)) {
        const auto start = std::chrono::steady_clock::now();
        MeshReport mr;
        try {
          TriangleSoup mesh = load_mesh(file.string());
          const int direction = parse_direction(dir);
          const double l = bbox_diagonal(mesh).diagonal;
          DistanceSpec spec;
          spec.kind = DistanceSpec::Kind::kPercent;
          spec.value = Rational(pct);
          apply_distances(mesh, spec, l);
          RunConfig config;
          config.direction = direction;
          config.threads = std::max(1, o.threads);
          config.time_limit = o.time_limit;
          const RunResult run = run_offset(mesh, config);
          if (run.status == RunStatus::kOk) {
            MetricsConfig mc;
            mc.sampler.seed = o.seed;
            mc.sampler.density = o.density;
            mc.threads = config.threads;
            mr = measure(SurfaceMesh::from(weld(mesh)), SurfaceMesh::from(run.mesh),
                         l, mean_distance(mesh), direction, mc);
          } else {
            mr.success = true;
          }
        } catch (const std::exception& e) {
          std::cerr << file.filename().string() << " " << dir << " " << pct
                    << "%: " << e.what() << '\n';
          mr = MeshReport{};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char time_buf[32];
        std::snprintf(time_buf, sizeof(time_buf), "%.3f", seconds);
        csv << file.filename().string() << ',' << dir << ',' << pct << ','
            << fmt(mr.d_plane_oi) << ',' << fmt(mr.d_point_oi) << ','
            << fmt(mr.d_angle_oi) << ',' << fmt(mr.d_plane_io) << ','
            << fmt(mr.d_point_io) << ',' << fmt(mr.d_angle_io) << ','
            << (mr.success ? 1 : 0) << ',' << mr.faces << ',' << time_buf << '\n';
      }
    }
  }
  if (o.output.empty()) std::cout << csv.str();
  else write_text(o.output, csv.str());
  return kExitOk;
}

int cmd_validate(const std::string& path) {
  const TriangleSoup mesh = load_mesh(path);
  const ValidityReport r = validate_mesh(weld(mesh));
  json out = validity_json(r);
  out["schema"] = kReportSchema;
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

struct ReportOptions {
  std::string input, output, direction = "out", dist, dist_pct, csv;
  uint64_t seed = 1;
  double density = 1e4, feature_deg = 30.0;
  int threads = default_thread_count();
};

int cmd_report(const ReportOptions& o) {
  TriangleSoup in = load_mesh(o.input);
  const TriangleSoup out = load_mesh(o.output);
  const double l = bbox_diagonal(in).diagonal;
  OffsetOptions dist;
  dist.dist = o.dist;
  dist.dist_pct = o.dist_pct;
  apply_distances(in, distance_spec(dist), l);
  MetricsConfig mc;
  mc.sampler.seed = o.seed;
  mc.sampler.density = o.density;
  mc.feature_degrees = o.feature_deg;
  mc.threads = std::max(1, o.threads);
  const MeshReport r = measure(SurfaceMesh::from(weld(in)), SurfaceMesh::from(weld(out)),
                               l, mean_distance(in), parse_direction(o.direction), mc);
  json j = report_json(r);
  j["schema"] = kReportSchema;
  std::cout << j.dump(2) << '\n';
  if (!o.csv.empty()) {
    std::ostringstream csv;
    csv << "D_plane(Mo,Mi),D_point(Mo,Mi),D_angle(Mo,Mi),D_plane(Mi,Mo),"
           "D_point(Mi,Mo),D_angle(Mi,Mo),SUC,FACE,TIME\n"
        << fmt(r.d_plane_oi) << ',' << fmt(r.d_point_oi) << ',' << fmt(r.d_angle_oi)
        << ',' << fmt(r.d_plane_io) << ',' << fmt(r.d_point_io) << ','
        << fmt(r.d_angle_io) << ",1," << r.faces << ",\n";
    write_text(o.csv, csv.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mitered offset surfaces for triangle meshes"};
  app.require_subcommand(1);

  OffsetOptions off;
  CLI::App* offset = app.add_subcommand("offset", "Offset a mesh");
  offset->add_option("--in", off.input, "Input mesh (OBJ, OFF, STL)")->required();
  offset->add_option("--out", off.output, "Output OBJ")->required();
  offset->add_option("--dir", off.direction, "in or out");
  offset->add_option("--dist", off.dist, "Uniform absolute distance");
  offset->add_option("--dist-pct", off.dist_pct, "Uniform distance, percent of the diagonal");
  offset->add_option("--per-face", off.per_face, "One distance per line, per triangle");
  offset->add_option("--linear", off.linear, "LOW,HIGH percents interpolated along --axis");
  offset->add_option("--axis", off.linear_axis, "Axis for --linear (0, 1, 2)");
  offset->add_option("--eps", off.eps, "Neighborhood radius, fraction of the diagonal");
  offset->add_option("--lambda", off.lambda, "Displacement regularizer");
  offset->add_option("--alpha", off.alpha, "Plane distance tolerance, fraction of the diagonal");
  offset->add_option("--merge-deg", off.merge_deg, "Initial normal merge angle");
  offset->add_option("--feature-deg", off.feature_deg, "Feature line threshold");
  offset->add_flag("--no-deferral", off.no_deferral, "Disable deferred extraction");
  offset->add_flag("--no-early-reject", off.no_early_reject, "Disable subdivision early reject");
  offset->add_flag("--no-grid", off.no_grid, "Disable grid ordering");
  offset->add_option("--grid-cell", off.grid_cell, "Grid cell edge override");
  offset->add_option("--threads", off.threads, "Worker threads");
  offset->add_option("--seed", off.seed, "Sampling seed");
  offset->add_option("--time-limit", off.time_limit, "Seconds, 0 for none");
  offset->add_option("--digits", off.digits, "Significant digits in the OBJ");
  offset->add_option("--rational-out", off.rational_out, "Exact vertex output");
  offset->add_option("--report", off.report, "JSON report path (stdout otherwise)");
  offset->add_option("--dump-offsets", off.dump_offsets, "Offset points as JSON");
  offset->add_option("--dump-polyhedra", off.dump_polyhedra, "Offset volumes as OBJ");
  offset->add_flag("--metrics", off.metrics, "Measure distances and features");
  offset->add_option("--density", off.density, "Samples per unit diagonal^2");
  offset->add_flag("--timings", off.timings, "Include stage timings in the report");
  offset->add_option("--export-check", off.export_digits,
                     "Count self-intersections after rounding to this many digits");

  CorpusOptions corp;
  CLI::App* corpus = app.add_subcommand("corpus", "Offset every mesh in a directory");
  corpus->add_option("--dir", corp.directory, "Directory of meshes")->required();
  corpus->add_option("--out", corp.output, "CSV path (stdout otherwise)");
  corpus->add_option("--pct", corp.percents, "Comma separated percents");
  corpus->add_option("--directions", corp.directions, "Comma separated: in,out");
  corpus->add_option("--time-limit", corp.time_limit, "Seconds per run");
  corpus->add_option("--threads", corp.threads, "Worker threads");
  corpus->add_option("--seed", corp.seed, "Sampling seed");
  corpus->add_option("--density", corp.density, "Samples per unit diagonal^2");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a mesh");
  validate->add_option("--in", validate_path, "Mesh")->required();

  ReportOptions rep;
  CLI::App* report = app.add_subcommand("report", "Compare an input and an offset");
  report->add_option("--input", rep.input, "Input mesh")->required();
  report->add_option("--output", rep.output, "Offset mesh")->required();
  report->add_option("--dir", rep.direction, "in or out");
  report->add_option("--dist", rep.dist, "Absolute distance");
  report->add_option("--dist-pct", rep.dist_pct, "Percent of the diagonal");
  report->add_option("--csv", rep.csv, "Also write a CSV row");
  report->add_option("--seed", rep.seed, "Sampling seed");
  report->add_option("--density", rep.density, "Samples per unit diagonal^2");
  report->add_option("--feature-deg", rep.feature_deg, "Feature line threshold");
  report->add_option("--threads", rep.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }
  try {
    if (*offset) return cmd_offset(off);
    if (*corpus) return cmd_corpus(corp);
    if (*validate) return cmd_validate(validate_path);
    if (*report) return cmd_report(rep);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
