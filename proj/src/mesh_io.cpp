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

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "miter/error.hpp"
#include "miter/mesh.hpp"

namespace miter {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void format_error(size_t line, const std::string& what) {
  throw Error(ErrorKind::kFormat, "line " + std::to_string(line) + ": " + what);
}

Rational number_at(std::string_view token, size_t line) {
  try {
    return parse_decimal(token);
  } catch (const std::invalid_argument&) {
    format_error(line, "bad number '" + std::string(token) + "'");
  }
}

long integer_at(std::string_view token, size_t line) {
  long value = 0;
  bool negative = false;
  size_t i = 0;
  if (!token.empty() && (token[0] == '-' || token[0] == '+')) {
    negative = token[0] == '-';
    i = 1;
  }
  if (i == token.size()) format_error(line, "bad index '" + std::string(token) + "'");
  for (; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i])))
      format_error(line, "bad index '" + std::string(token) + "'");
    value = value * 10 + (token[i] - '0');
    if (value > (1L << 40)) format_error(line, "index too large");
  }
  return negative ? -value : value;
}

void finish(TriangleSoup& mesh) {
  if (mesh.triangles.empty())
    throw Error(ErrorKind::kEmptyInput, "mesh has no triangles");
  mesh.set_uniform_distance(0);
}

}  // namespace

TriangleSoup parse_obj(const std::string& text) {
  TriangleSoup mesh;
  std::vector<size_t> face_lines;
  const auto lines = split_lines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const size_t line_no = ln + 1;
    const auto tokens = split_ws(lines[ln]);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens[0] == "v") {
      if (tokens.size() < 4) format_error(line_no, "vertex needs 3 coordinates");
      mesh.vertices.emplace_back(number_at(tokens[1], line_no),
                                 number_at(tokens[2], line_no),
                                 number_at(tokens[3], line_no));
    } else if (tokens[0] == "f") {
      if (tokens.size() != 4)
        format_error(line_no, "only triangular faces are supported");
      TriIndex f;
      for (int k = 0; k < 3; ++k) {
        std::string_view tok = tokens[k + 1];
        tok = tok.substr(0, tok.find('/'));
        long idx = integer_at(tok, line_no);
        const long n = static_cast<long>(mesh.vertices.size());
        if (idx < 0) idx = n + idx + 1;
        if (idx < 1 || idx > n) {
          throw Error(ErrorKind::kIndexOutOfRange,
                      "line " + std::to_string(line_no) + ": face index " +
                          std::string(tokens[k + 1]) + " out of range (" +
                          std::to_string(n) + " vertices)");
        }
        f[k] = static_cast<int>(idx - 1);
      }
      mesh.triangles.push_back(f);
      face_lines.push_back(line_no);
    }
  }
  finish(mesh);
  return mesh;
}

TriangleSoup parse_off(const std::string& text) {
  // Flatten to (token, line) pairs, dropping comments.
  std::vector<std::pair<std::string_view, size_t>> tokens;
  const auto lines = split_lines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    for (auto tok : split_ws(line)) tokens.emplace_back(tok, ln + 1);
  }
  size_t i = 0;
  auto next = [&]() -> std::pair<std::string_view, size_t> {
    if (i >= tokens.size())
      format_error(lines.size(), "unexpected end of OFF data");
    return tokens[i++];
  };
  auto [header, header_line] = next();
  if (header != "OFF") format_error(header_line, "missing OFF header");
  const auto [nv_tok, nv_line] = next();
  const long nv = integer_at(nv_tok, nv_line);
  const auto [nf_tok, nf_line] = next();
  const long nf = integer_at(nf_tok, nf_line);
  const auto [ne_tok, ne_line] = next();
  integer_at(ne_tok, ne_line);
  if (nv < 0 || nf < 0) format_error(nv_line, "negative element count");
  TriangleSoup mesh;
  for (long v = 0; v < nv; ++v) {
    RPoint p;
    for (int k = 0; k < 3; ++k) {
      auto [tok, ln] = next();
      p[k] = number_at(tok, ln);
    }
    mesh.vertices.push_back(p);
  }
  for (long f = 0; f < nf; ++f) {
    auto [count_tok, ln] = next();
    if (integer_at(count_tok, ln) != 3)
      format_error(ln, "only triangular faces are supported");
    TriIndex face;
    for (int k = 0; k < 3; ++k) {
      auto [tok, vln] = next();
      const long idx = integer_at(tok, vln);
      if (idx < 0 || idx >= nv) {
        throw Error(ErrorKind::kIndexOutOfRange,
                    "line " + std::to_string(vln) + ": face index " +
                        std::string(tok) + " out of range (" +
                        std::to_string(nv) + " vertices)");
      }
      face[k] = static_cast<int>(idx);
    }
    mesh.triangles.push_back(face);
  }
  finish(mesh);
  return mesh;
}

TriangleSoup parse_stl(const std::string& bytes) {
  TriangleSoup mesh;
  const bool looks_binary = [&] {
    if (bytes.size() < 84) return false;
    uint32_t count = 0;
    std::memcpy(&count, bytes.data() + 80, 4);
    return bytes.size() == 84 + 50ull * count;
  }();
  if (looks_binary) {
    uint32_t count = 0;
    std::memcpy(&count, bytes.data() + 80, 4);
    for (uint32_t f = 0; f < count; ++f) {
      const char* rec = bytes.data() + 84 + 50ull * f;
      TriIndex face;
      for (int k = 0; k < 3; ++k) {
        float xyz[3];
        std::memcpy(xyz, rec + 12 + 12 * k, 12);
        face[k] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.emplace_back(Rational(double(xyz[0])),
                                   Rational(double(xyz[1])),
                                   Rational(double(xyz[2])));
      }
      mesh.triangles.push_back(face);
    }
    finish(mesh);
    return mesh;
  }
  const auto lines = split_lines(bytes);
  bool saw_solid = false;
  int pending = 0;
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tokens = split_ws(lines[ln]);
    if (tokens.empty()) continue;
    if (tokens[0] == "solid") saw_solid = true;
    if (tokens[0] != "vertex") continue;
    if (tokens.size() < 4) format_error(ln + 1, "vertex needs 3 coordinates");
    mesh.vertices.emplace_back(number_at(tokens[1], ln + 1),
                               number_at(tokens[2], ln + 1),
                               number_at(tokens[3], ln + 1));
    if (++pending == 3) {
      const int n = static_cast<int>(mesh.vertices.size());
      mesh.triangles.push_back({n - 3, n - 2, n - 1});
      pending = 0;
    }
  }
  if (!saw_solid) format_error(1, "not an STL file");
  if (pending != 0) format_error(lines.size(), "facet with fewer than 3 vertices");
  finish(mesh);
  return mesh;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kFormat, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kConfig, "cannot write " + path);
  out << text;
}

TriangleSoup load_mesh(const std::string& path, MeshFormat format) {
  if (format == MeshFormat::kAuto) {
    std::string ext = path.substr(path.find_last_of('.') + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "obj") format = MeshFormat::kObj;
    else if (ext == "off") format = MeshFormat::kOff;
    else if (ext == "stl") format = MeshFormat::kStl;
    else throw Error(ErrorKind::kFormat, "unknown mesh extension: " + path);
  }
  const std::string text = read_text(path);
  switch (format) {
    case MeshFormat::kObj: return parse_obj(text);
    case MeshFormat::kOff: return parse_off(text);
    case MeshFormat::kStl: return parse_stl(text);
    case MeshFormat::kAuto: break;
  }
  throw Error(ErrorKind::kFormat, "unsupported format");
}

std::string format_obj(const std::vector<RPoint>& vertices,
                       const std::vector<TriIndex>& triangles, int digits) {
  std::string out;
  char buf[128];
  for (const RPoint& p : vertices) {
    std::snprintf(buf, sizeof buf, "v %.*g %.*g %.*g\n", digits, nearest_double(p[0]),
                  digits, nearest_double(p[1]), digits, nearest_double(p[2]));
    out += buf;
  }
  for (const TriIndex& f : triangles) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  return out;
}

std::string format_rational_obj(const std::vector<RPoint>& vertices,
                                const std::vector<TriIndex>& triangles) {
  std::string out;
  for (const RPoint& p : vertices) {
    out += "v " + to_fraction_string(p[0]) + " " + to_fraction_string(p[1]) +
           " " + to_fraction_string(p[2]) + "\n";
  }
  for (const TriIndex& f : triangles) {
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) +
           " " + std::to_string(f[2] + 1) + "\n";
  }
  return out;
}

std::vector<Rational> load_distances(const std::string& path,
                                     size_t expected_count) {
  const std::string text = read_text(path);
  std::vector<Rational> out;
  const auto lines = split_lines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tokens = split_ws(lines[ln]);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) format_error(ln + 1, "expected one distance per line");
    Rational d = number_at(tokens[0], ln + 1);
    if (sgn(d) < 0) format_error(ln + 1, "negative distance");
    out.push_back(d);
  }
  if (out.size() != expected_count) {
    throw Error(ErrorKind::kConfig,
                "per-face distance file has " + std::to_string(out.size()) +
                    " entries for " + std::to_string(expected_count) +
                    " triangles");
  }
  return out;
}

}  // namespace miter
