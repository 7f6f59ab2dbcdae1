// Copyright 2026 The segeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "segeval/bspline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "segeval/error.hpp"

namespace segeval {

std::string_view to_string(SplineMode mode) noexcept {
  return mode == SplineMode::Interpolating ? "interpolating" : "approximating";
}

namespace {

void require_control_points(std::span<const Point> pts) {
  if (pts.size() < 3) {
    throw Error(Errc::TooFewControlPoints, "closed quadratic spline needs at least 3 points, got " +
                                               std::to_string(pts.size()));
  }
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(Errc::InvalidArgument, "control point is not finite");
    }
  }
}

}  // namespace

std::vector<Point> spline_points(std::span<const Point> control_points, int samples_per_segment) {
  require_control_points(control_points);
  if (samples_per_segment < 1) {
    throw Error(Errc::InvalidArgument, "samples_per_segment must be at least 1");
  }
  const std::size_t m = control_points.size();
  const auto s = static_cast<std::size_t>(samples_per_segment);
  std::vector<Point> out(m * s);
  const auto segments = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t seg = 0; seg < segments; ++seg) {
    const auto i = static_cast<std::size_t>(seg);
    const Point& prev = control_points[(i + m - 1) % m];
    const Point& cur = control_points[i];
    const Point& next = control_points[(i + 1) % m];
    for (std::size_t k = 0; k < s; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(s);
      const double b0 = 0.5 * (1.0 - t) * (1.0 - t);
      const double b1 = 0.5 * (-2.0 * t * t + 2.0 * t + 1.0);
      const double b2 = 0.5 * t * t;
      out[i * s + k] = {b0 * prev.x + b1 * cur.x + b2 * next.x,
                        b0 * prev.y + b1 * cur.y + b2 * next.y};
    }
  }
  return out;
}

std::vector<Point> interpolating_control_points(std::span<const Point> clicks) {
  require_control_points(clicks);
  const std::size_t m = clicks.size();
  double scale = 1.0;
  for (const auto& q : clicks) scale = std::max({scale, std::abs(q.x), std::abs(q.y)});

  // Cyclic system with diagonal 6 and off-diagonals 1: Gauss-Seidel contracts
  // by at least 1/3 per sweep.
  std::vector<Point> p(clicks.begin(), clicks.end());
  for (int sweep = 0; sweep < 200; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point& prev = p[(i + m - 1) % m];
      const Point& next = p[(i + 1) % m];
      const Point updated{(8.0 * clicks[i].x - prev.x - next.x) / 6.0,
                          (8.0 * clicks[i].y - prev.y - next.y) / 6.0};
      change = std::max({change, std::abs(updated.x - p[i].x), std::abs(updated.y - p[i].y)});
      p[i] = updated;
    }
    if (change <= 1e-14 * scale) break;
  }
  return p;
}

BinaryMask fill_closed_curve(std::span<const Point> polyline, Dims dims, bool strict) {
  if (polyline.size() < 3) {
    throw Error(Errc::DegenerateCurve, "closed curve needs at least 3 points");
  }
  BinaryMask mask(dims.width, dims.height, false);
  const std::size_t n = polyline.size();

  if (strict) {
    double twice_area = 0.0;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      twice_area += polyline[j].x * polyline[i].y - polyline[i].x * polyline[j].y;
    }
    if (twice_area == 0.0) throw Error(Errc::DegenerateCurve, "closed curve encloses no area");
  }

  const double width = dims.width;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < dims.height; ++y) {
    const double yc = y + 0.5;
    std::vector<double> xs;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point& a = polyline[i];
      const Point& b = polyline[j];
      if ((a.y > yc) != (b.y > yc)) {
        xs.push_back((b.x - a.x) * (yc - a.y) / (b.y - a.y) + a.x);
      }
    }
    std::sort(xs.begin(), xs.end());
    // Center xc is inside iff an odd number of crossings lie strictly right
    // of it, i.e. xs[2j] <= xc < xs[2j+1].
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const double lo = std::clamp(xs[k], -1.0, width + 1.0);
      const double hi = std::clamp(xs[k + 1], -1.0, width + 1.0);
      int x = std::max(0, static_cast<int>(std::floor(lo - 0.5)));
      while (x < dims.width && x + 0.5 < lo) ++x;
      for (; x < dims.width && x + 0.5 < hi; ++x) mask.set(x, y, true);
    }
  }
  return mask;
}

BinaryMask render_border(const BorderAnnotation& ann, int samples_per_segment, SplineMode mode) {
  const auto& pts = ann.control_points;
  const auto curve = mode == SplineMode::Interpolating
                         ? spline_points(interpolating_control_points(pts), samples_per_segment)
                         : spline_points(pts, samples_per_segment);
  return fill_closed_curve(curve, ann.target_dims);
}

namespace {

double parse_coordinate(const std::string& token, std::size_t line) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw Error(Errc::ParseError,
                "annotation line " + std::to_string(line) + ": bad coordinate '" + token + "'");
  }
  return v;
}

}  // namespace

BorderAnnotation parse_annotation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw Error(Errc::ParseError, "annotation is empty");
  std::istringstream header(line);
  std::string magic;
  long long count = -1;
  int width = 0;
  int height = 0;
  std::string extra;
  if (!(header >> magic >> count >> width >> height) || magic != "border" || (header >> extra)) {
    throw Error(Errc::ParseError, "annotation header must be 'border <M> <width> <height>'");
  }
  if (count < 0 || width < 1 || height < 1) {
    throw Error(Errc::ParseError, "annotation header has a negative count or empty raster");
  }

  BorderAnnotation ann;
  ann.target_dims = {width, height};
  for (long long i = 0; i < count; ++i) {
    if (!next_line()) {
      throw Error(Errc::ParseError, "annotation declares " + std::to_string(count) +
                                        " points but has " + std::to_string(i));
    }
    std::istringstream row(line);
    std::string xs;
    std::string ys;
    if (!(row >> xs >> ys) || (row >> extra)) {
      throw Error(Errc::ParseError, "annotation line " + std::to_string(lineno) + " is not 'x y'");
    }
    ann.control_points.push_back({parse_coordinate(xs, lineno), parse_coordinate(ys, lineno)});
  }
  if (next_line()) {
    throw Error(Errc::ParseError, "annotation has more than " + std::to_string(count) + " points");
  }
  return ann;
}

BorderAnnotation read_annotation(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open '" + path.string() + "'");
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return parse_annotation(text);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw Error(Errc::ParseError, path.string() + ": " + e.what());
    throw;
  }
}

std::string format_annotation(const BorderAnnotation& ann) {
  std::string out = "border " + std::to_string(ann.control_points.size()) + " " +
                    std::to_string(ann.target_dims.width) + " " +
                    std::to_string(ann.target_dims.height) + "\n";
  char buf[64];
  for (const auto& p : ann.control_points) {
    auto r = std::to_chars(buf, buf + sizeof buf, p.x);
    out.append(buf, r.ptr);
    out.push_back(' ');
    r = std::to_chars(buf, buf + sizeof buf, p.y);
    out.append(buf, r.ptr);
    out.push_back('\n');
  }
  return out;
}

}  // namespace segeval
