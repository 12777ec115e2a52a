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

#include "miter/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "miter/error.hpp"
#include "miter/intersect.hpp"
#include "miter/parallel.hpp"
#include "miter/ray.hpp"

namespace miter {

const char* face_class_name(FaceClass c) {
  switch (c) {
    case FaceClass::kEnclosed: return "T_I";
    case FaceClass::kShared: return "T_II";
    case FaceClass::kWrongSide: return "T_III";
    case FaceClass::kInput: return "T_IV";
    case FaceClass::kOutput: return "T_V";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SpatialGrid

SpatialGrid::SpatialGrid(const Box& domain, double cell) : cell_(cell) {
  origin_ = domain.lo;
  const Vec3d extent = domain.hi - domain.lo;
  const double max_extent = extent.maxCoeff();
  if (!(cell_ > 0)) cell_ = max_extent > 0 ? max_extent : 1.0;
  if (max_extent / cell_ > 64.0) cell_ = max_extent / 64.0;
  for (int i = 0; i < 3; ++i)
    dims_[i] = std::clamp(static_cast<int>(std::ceil(extent[i] / cell_)), 1, 64);
}

double SpatialGrid::auto_cell(double diagonal, double max_distance,
                              size_t num_triangles) {
  const double t = static_cast<double>(std::max<size_t>(num_triangles, 1));
  return std::max(2.0 * max_distance, diagonal * std::pow(t, -1.0 / 3.0));
}

int SpatialGrid::cell_of(const Vec3d& p) const {
  int idx[3];
  for (int i = 0; i < 3; ++i)
    idx[i] = std::clamp(static_cast<int>(std::floor((p[i] - origin_[i]) / cell_)),
                        0, dims_[i] - 1);
  return (idx[2] * dims_[1] + idx[1]) * dims_[0] + idx[0];
}

std::vector<int> SpatialGrid::cells_touching(const Box& box) const {
  int lo[3], hi[3];
  for (int i = 0; i < 3; ++i) {
    lo[i] = std::clamp(static_cast<int>(std::floor((box.lo[i] - origin_[i]) / cell_)),
                       0, dims_[i] - 1);
    hi[i] = std::clamp(static_cast<int>(std::floor((box.hi[i] - origin_[i]) / cell_)),
                       0, dims_[i] - 1);
  }
  std::vector<int> out;
  for (int z = lo[2]; z <= hi[2]; ++z)
    for (int y = lo[1]; y <= hi[1]; ++y)
      for (int x = lo[0]; x <= hi[0]; ++x)
        out.push_back((z * dims_[1] + y) * dims_[0] + x);
  return out;
}

// ---------------------------------------------------------------------------
// Extractor

Extractor::Extractor(const OffsetVolumeSet& volumes, const MeshIndex& index,
                     const SideOracle& side, int direction, double diagonal,
                     ExtractionConfig config)
    : volumes_(volumes),
      index_(index),
      side_(side),
      direction_(direction),
      diagonal_(diagonal),
      config_(config) {
  std::vector<Box> facet_boxes, poly_boxes;
  for (size_t p = 0; p < volumes_.polyhedra.size(); ++p) {
    const ConvexPolyhedron& poly = volumes_.polyhedra[p];
    poly_boxes.push_back(poly.box);
    for (size_t f = 0; f < poly.facets.size(); ++f) {
      facets_.emplace_back(static_cast<int>(p), static_cast<int>(f));
      input_facet_.push_back(
          volumes_.is_input_facet(static_cast<int>(p), static_cast<int>(f)));
      facet_boxes.push_back(Box::of(poly.facet(static_cast<int>(f))));
    }
  }
  facet_tree_ = AabbTree(std::move(facet_boxes));
  poly_tree_ = AabbTree(std::move(poly_boxes));

  const TriangleSoup& mesh = index_.mesh();
  double max_d = 0.0;
  for (const Rational& d : mesh.per_face_distance) max_d = std::max(max_d, d.get_d());
  Box domain;
  for (const RPoint& v : mesh.vertices) domain.expand(v);
  domain = domain.inflated(max_d);
  const double cell = config_.grid_cell > 0
                          ? config_.grid_cell
                          : SpatialGrid::auto_cell(diagonal_, max_d,
                                                   mesh.num_triangles());
  grid_ = SpatialGrid(domain, cell);
}

RTriangle Extractor::facet_triangle(size_t g) const {
  const auto [p, f] = facets_[g];
  return volumes_.polyhedra[p].facet(f);
}

std::vector<RTriangle> Extractor::resolve_facet(size_t g) const {
  const RTriangle F = facet_triangle(g);
  const int owner = facets_[g].first;
  FacetConstraints cons;
  facet_tree_.query(facet_tree_.box(static_cast<int>(g)), [&](int h) {
    if (facets_[h].first == owner) return;
    const TriTriIntersection r = tri_tri_intersection(F, facet_triangle(h));
    tri_tri_calls_.fetch_add(1, std::memory_order_relaxed);
    switch (r.kind) {
      case IntersectionKind::kEmpty:
        break;
      case IntersectionKind::kPoint:
        cons.points.push_back(r.points[0]);
        break;
      case IntersectionKind::kSegment:
        cons.segments.push_back({r.points[0], r.points[1]});
        break;
      case IntersectionKind::kPolygon:
        for (size_t k = 0; k < r.points.size(); ++k)
          cons.segments.push_back(
              {r.points[k], r.points[(k + 1) % r.points.size()]});
        break;
    }
  });
  if (cons.empty()) return {F};
  return constrained_facet_triangulation(std::span<const RPoint>(F.data(), 3),
                                         cons);
}

bool Extractor::covers(int b, int owner, const RPoint& c, const RPoint& n,
                       const RPoint& u, const RPoint& w, bool* shared) const {
  const ConvexPolyhedron& B = volumes_.polyhedra[b];
  // A facet of B in the piece's plane facing the same way means the piece
  // can at best lie on B's boundary.
  bool same_face = false;
  std::vector<int> sides(B.planes.size());
  for (size_t k = 0; k < B.planes.size(); ++k) {
    sides[k] = B.planes[k].side(c);
    if (sides[k] > 0) return false;
    if (sides[k] == 0 && sgn(B.planes[k].normal.dot(n)) > 0 &&
        is_zero(B.planes[k].normal.cross(n)))
      same_face = true;
  }
  if (same_face && b > owner) return false;
  bool touching = false;
  for (size_t k = 0; k < B.planes.size(); ++k) {
    if (sides[k] < 0) continue;
    touching = true;
    const RPoint& m = B.planes[k].normal;
    if (same_face && is_zero(m.cross(n)) && sgn(m.dot(n)) > 0) continue;
    int key = same_face ? 0 : sgn(m.dot(n));
    if (key == 0) key = sgn(m.dot(u));
    if (key == 0) key = sgn(m.dot(w));
    if (key >= 0) return false;
  }
  if (shared) *shared = touching;
  return true;
}

bool Extractor::piece_inside_input(size_t g, const RTriangle& piece) const {
  const auto [p, f] = facets_[g];
  const Vec3d n = volumes_.polyhedra[p].planes[f].unit_normal;
  return side_.inside(centroid(piece), &n);
}

FaceClass Extractor::classify(size_t g, const RTriangle& piece) const {
  if (input_facet_[g]) return FaceClass::kInput;
  const auto [p, f] = facets_[g];
  const RPoint c = centroid(piece);
  const RPoint& n = volumes_.polyhedra[p].planes[f].normal;
  const RPoint u = piece[0] - c;
  const RPoint w = piece[1] - c;
  Box probe;
  probe.expand(c);
  int hit = -1;
  bool shared = false;
  poly_tree_.query(probe, [&](int b) {
    if (hit >= 0 || b == p) return;
    inside_tests_.fetch_add(1, std::memory_order_relaxed);
    bool s = false;
    if (covers(b, p, c, n, u, w, &s)) {
      hit = b;
      shared = s;
    }
  });
  if (hit >= 0) return shared ? FaceClass::kShared : FaceClass::kEnclosed;
  const bool inside = piece_inside_input(g, piece);
  if (direction_ > 0 ? inside : !inside) return FaceClass::kWrongSide;
  return FaceClass::kOutput;
}

std::vector<int> Extractor::nearby_polyhedra(size_t g) const {
  const int owner = facets_[g].first;
  std::vector<int> out;
  poly_tree_.query(facet_tree_.box(static_cast<int>(g)), [&](int b) {
    if (b != owner) out.push_back(b);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Extractor::EarlyReject Extractor::early_reject_subdivide(
    size_t g, const std::vector<int>& candidates) const {
  EarlyReject er;
  const RTriangle F = facet_triangle(g);
  const auto [owner, f] = facets_[g];
  const RPoint& n = volumes_.polyhedra[owner].planes[f].normal;
  const RPoint m01 = midpoint(F[0], F[1]);
  const RPoint m12 = midpoint(F[1], F[2]);
  const RPoint m20 = midpoint(F[2], F[0]);
  er.parts = {RTriangle{F[0], m01, m20}, RTriangle{m01, F[1], m12},
              RTriangle{m20, m12, F[2]}, RTriangle{m01, m12, m20}};
  auto split4 = [](const RTriangle& t) {
    const RPoint a = midpoint(t[0], t[1]), b = midpoint(t[1], t[2]),
                 c = midpoint(t[2], t[0]);
    return std::array<RTriangle, 4>{RTriangle{t[0], a, c}, RTriangle{a, t[1], b},
                                    RTriangle{c, b, t[2]}, RTriangle{a, b, c}};
  };
  for (int j = 0; j < 4; ++j) {
    std::vector<RPoint> samples;
    for (const RTriangle& s : split4(er.parts[j]))
      for (const RTriangle& q : split4(s)) samples.push_back(centroid(q));
    int best = -1, best_count = 0;
    for (int b : candidates) {
      const ConvexPolyhedron& B = volumes_.polyhedra[b];
      int count = 0;
      for (const RPoint& q : samples) {
        inside_tests_.fetch_add(1, std::memory_order_relaxed);
        if (B.contains(q)) ++count;
      }
      if (count > best_count) {
        best = b;
        best_count = count;
      }
    }
    er.chosen[j] = best;
    if (best < 0) continue;
    const ConvexPolyhedron& B = volumes_.polyhedra[best];
    const RTriangle& part = er.parts[j];
    bool covered = B.contains(part[0]) && B.contains(part[1]) && B.contains(part[2]);
    for (size_t k = 0; k < B.planes.size() && covered; ++k) {
      const RPlane& plane = B.planes[k];
      if (plane.side(part[0]) != 0 || plane.side(part[1]) != 0 ||
          plane.side(part[2]) != 0)
        continue;
      // The part lies on one of B's faces.
      if (sgn(plane.normal.dot(n)) > 0 && best > owner) covered = false;
    }
    er.dropped[j] = covered;
  }
  return er;
}

std::vector<ClassifiedTriangle> Extractor::process(size_t g) const {
  if (std::chrono::steady_clock::now() > config_.deadline)
    throw Error(ErrorKind::kTimeLimit, "time limit reached during extraction");
  std::vector<ClassifiedTriangle> out;
  const auto [p, f] = facets_[g];
  for (const RTriangle& piece : resolve_facet(g)) {
    const FaceClass c = classify(g, piece);
    if (c == FaceClass::kOutput) out.push_back({piece, p, f, c});
  }
  return out;
}

ExtractionResult Extractor::brute_force() const {
  tri_tri_calls_ = 0;
  inside_tests_ = 0;
  std::vector<std::vector<ClassifiedTriangle>> out(facets_.size());
  std::vector<size_t> work;
  for (size_t g = 0; g < facets_.size(); ++g)
    if (!input_facet_[g]) work.push_back(g);
  parallel_for(work.size(), config_.threads,
               [&](size_t i) { out[work[i]] = process(work[i]); });
  ExtractionResult result;
  for (auto& v : out)
    result.triangles.insert(result.triangles.end(), v.begin(), v.end());
  result.counters.tri_tri_calls = tri_tri_calls_;
  result.counters.inside_tests = inside_tests_;
  result.counters.iterations = 1;
  result.counters.facets_resolved = work.size();
  return result;
}

ExtractionResult Extractor::extract() const {
  if (!config_.deferral && !config_.early_reject) return brute_force();
  tri_tri_calls_ = 0;
  inside_tests_ = 0;
  const size_t nf = facets_.size();
  enum State : char { kSkip, kLater, kCur, kDone };
  std::vector<char> state(nf, kSkip);

  // Initial split by winding side and contact with the input.
  parallel_for(nf, config_.threads, [&](size_t g) {
    if (input_facet_[g]) return;
    if (!config_.deferral) {
      state[g] = kCur;
      return;
    }
    const RTriangle F = facet_triangle(g);
    const bool inside = side_.inside(centroid(F));
    if (direction_ > 0 ? inside : !inside) {
      state[g] = kLater;
      return;
    }
    for (const RPoint& v : F) {
      if (index_.is_input_position(v) || index_.on_input_surface(v)) {
        state[g] = kLater;
        return;
      }
    }
    state[g] = kCur;
  });

  std::vector<std::vector<ClassifiedTriangle>> out(nf);
  std::vector<char> rejected(nf, 0);
  std::map<RPoint, int, RPointLess> vertex_ids;
  std::map<std::pair<int, int>, int> edge_count;
  ExtractionResult result;

  for (;;) {
    std::vector<size_t> work;
    for (size_t g = 0; g < nf; ++g)
      if (state[g] == kCur) work.push_back(g);
    if (work.empty()) break;
    ++result.counters.iterations;
    if (config_.use_grid) {
      std::vector<int> cell(nf, 0);
      for (size_t g : work) cell[g] = grid_.cell_of(to_double(centroid(facet_triangle(g))));
      std::stable_sort(work.begin(), work.end(), [&](size_t a, size_t b) {
        return cell[a] != cell[b] ? cell[a] < cell[b] : a < b;
      });
    }
    parallel_for(work.size(), config_.threads, [&](size_t i) {
      const size_t g = work[i];
      if (config_.early_reject) {
        const std::vector<int> near = nearby_polyhedra(g);
        if (static_cast<int>(near.size()) >= config_.early_reject_threshold &&
            early_reject_subdivide(g, near).all_dropped()) {
          rejected[g] = 1;
          return;
        }
      }
      out[g] = process(g);
    });
    std::sort(work.begin(), work.end());
    for (size_t g : work) {
      state[g] = kDone;
      if (rejected[g]) ++result.counters.early_rejected;
      else ++result.counters.facets_resolved;
      for (const ClassifiedTriangle& t : out[g]) {
        int ids[3];
        for (int k = 0; k < 3; ++k)
          ids[k] = vertex_ids.emplace(t.triangle[k], static_cast<int>(vertex_ids.size()))
                       .first->second;
        for (int k = 0; k < 3; ++k) {
          int a = ids[k], b = ids[(k + 1) % 3];
          if (a > b) std::swap(a, b);
          ++edge_count[{a, b}];
        }
      }
    }
    if (!config_.deferral) continue;

    // Boundary of the accepted set, then wake deferred facets touching it.
    std::vector<RPoint> id_to_point(vertex_ids.size());
    for (const auto& [p, id] : vertex_ids) id_to_point[id] = p;
    std::vector<std::array<RPoint, 2>> boundary;
    std::vector<Box> boxes;
    for (const auto& [e, count] : edge_count) {
      if (count % 2 == 0) continue;
      boundary.push_back({id_to_point[e.first], id_to_point[e.second]});
      boxes.push_back(Box::of(boundary.back()));
    }
    if (boundary.empty()) break;
    const AabbTree btree(std::move(boxes));
    std::vector<size_t> later;
    for (size_t g = 0; g < nf; ++g)
      if (state[g] == kLater) later.push_back(g);
    std::vector<char> wake(later.size(), 0);
    parallel_for(later.size(), config_.threads, [&](size_t i) {
      const size_t g = later[i];
      const RTriangle F = facet_triangle(g);
      btree.query(facet_tree_.box(static_cast<int>(g)), [&](int s) {
        if (!wake[i] && segment_meets_triangle(boundary[s][0], boundary[s][1], F))
          wake[i] = 1;
      });
    });
    bool any = false;
    for (size_t i = 0; i < later.size(); ++i) {
      if (wake[i]) {
        state[later[i]] = kCur;
        any = true;
      }
    }
    if (!any) {
      result.open_boundary = !later.empty();
      break;
    }
  }
  for (auto& v : out)
    result.triangles.insert(result.triangles.end(), v.begin(), v.end());
  result.counters.tri_tri_calls = tri_tri_calls_;
  result.counters.inside_tests = inside_tests_;
  return result;
}

}  // namespace miter
