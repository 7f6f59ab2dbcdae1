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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "segeval/bspline.hpp"
#include "segeval/error.hpp"
#include "segeval/reference.hpp"
#include "support.hpp"

using namespace segeval;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

std::vector<Point> circle_points(int m, double cx, double cy, double r, double phase = 0.0) {
  std::vector<Point> pts;
  for (int i = 0; i < m; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * i / m;
    pts.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return pts;
}

std::vector<Point> random_points(std::mt19937_64& rng, int m, double lo, double hi) {
  std::vector<Point> pts;
  for (int i = 0; i < m; ++i) {
    pts.push_back({testing::uniform_real(rng, lo, hi), testing::uniform_real(rng, lo, hi)});
  }
  return pts;
}

}  // namespace

TEST_CASE("identical control points collapse the curve") {
  const std::vector<Point> pts(3, Point{2.5, -1.0});
  for (const auto& p : spline_points(pts, 16)) CHECK(p == Point{2.5, -1.0});
}

TEST_CASE("square control polygon rounds its corners") {
  const std::vector<Point> sq{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const auto hull = testing::convex_hull(sq);
  for (const auto& p : spline_points(sq, 64)) {
    CHECK(testing::inside_hull(hull, p, 1e-9));
    for (const auto& c : sq) CHECK(std::hypot(p.x - c.x, p.y - c.y) > 1.0);
  }
}

TEST_CASE("spline samples stay in the control hull") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = random_points(rng, testing::uniform_int(rng, 3, 20), -50.0, 150.0);
    const auto hull = testing::convex_hull(pts);
    for (const auto& p : spline_points(pts, testing::uniform_int(rng, 1, 40))) {
      CHECK(testing::inside_hull(hull, p, 1e-9));
    }
  }
}

TEST_CASE("adjacent segments join with equal value and slope") {
  std::mt19937_64 rng(23);
  const int s = 64;
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_points(rng, testing::uniform_int(rng, 3, 12), 0.0, 100.0);
    const auto c = spline_points(pts, s);
    const std::size_t n = c.size();
    const double h = 1.0 / s;
    for (std::size_t seg = 0; seg < pts.size(); ++seg) {
      const std::size_t j = seg * s;
      auto at = [&](std::ptrdiff_t off) {
        return c[(j + n + static_cast<std::size_t>(off + static_cast<std::ptrdiff_t>(n))) % n];
      };
      // Second-order one-sided differences are exact on quadratic pieces.
      const double left_x = (3 * at(0).x - 4 * at(-1).x + at(-2).x) / (2 * h);
      const double right_x = (-3 * at(0).x + 4 * at(1).x - at(2).x) / (2 * h);
      const double left_y = (3 * at(0).y - 4 * at(-1).y + at(-2).y) / (2 * h);
      const double right_y = (-3 * at(0).y + 4 * at(1).y - at(2).y) / (2 * h);
      const double scale = 1.0 + std::hypot(right_x, right_y);
      CHECK(std::abs(left_x - right_x) <= 1e-6 * scale);
      CHECK(std::abs(left_y - right_y) <= 1e-6 * scale);
      // The knot value is the midpoint of the adjacent control points.
      const Point& a = pts[(seg + pts.size() - 1) % pts.size()];
      const Point& b = pts[seg];
      CHECK(at(0).x == doctest::Approx((a.x + b.x) / 2));
      CHECK(at(0).y == doctest::Approx((a.y + b.y) / 2));
    }
  }
}

TEST_CASE("hexagon curve has six-fold symmetry") {
  const auto hex = circle_points(6, 0.0, 0.0, 10.0);
  const int s = 24;
  const auto c = spline_points(hex, s);
  const double a = std::numbers::pi / 3.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Point r{c[k].x * std::cos(a) - c[k].y * std::sin(a),
                  c[k].x * std::sin(a) + c[k].y * std::cos(a)};
    const Point& q = c[(k + s) % c.size()];
    CHECK(std::abs(r.x - q.x) < 1e-9);
    CHECK(std::abs(r.y - q.y) < 1e-9);
  }
}

TEST_CASE("interpolating mode passes through the clicks") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto clicks = random_points(rng, testing::uniform_int(rng, 3, 16), 0.0, 200.0);
    const int s = 8;
    const auto c = spline_points(interpolating_control_points(clicks), s);
    for (std::size_t i = 0; i < clicks.size(); ++i) {
      const Point& p = c[i * s + s / 2];
      CHECK(std::abs(p.x - clicks[i].x) < 1e-9);
      CHECK(std::abs(p.y - clicks[i].y) < 1e-9);
    }
  }
}

TEST_CASE("spline argument errors") {
  const std::vector<Point> two{{0, 0}, {1, 1}};
  CHECK(code_of([&] { spline_points(two, 8); }) == Errc::TooFewControlPoints);
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(code_of([&] { spline_points(tri, 0); }) == Errc::InvalidArgument);
  const std::vector<Point> nan{{0, 0}, {NAN, 0}, {0, 1}};
  CHECK(code_of([&] { spline_points(nan, 4); }) == Errc::InvalidArgument);
}

TEST_CASE("rectangle fill covers exactly the enclosed centers") {
  const std::vector<Point> rect{{2, 3}, {6, 3}, {6, 7}, {2, 7}};
  const auto m = fill_closed_curve(rect, Dims{10, 10});
  CHECK(m == testing::rect_mask(10, 10, 2, 3, 6, 7));
  CHECK(m.lesion_count() == 16);
}

TEST_CASE("fill clips to the raster") {
  const std::vector<Point> outside{{20, 20}, {24, 20}, {24, 24}, {20, 24}};
  CHECK(fill_closed_curve(outside, Dims{10, 10}).lesion_count() == 0);
  const std::vector<Point> straddle{{-5, -5}, {3, -5}, {3, 3}, {-5, 3}};
  CHECK(fill_closed_curve(straddle, Dims{10, 10}) == testing::rect_mask(10, 10, 0, 0, 3, 3));
}

TEST_CASE("fill degenerate curves") {
  const std::vector<Point> two{{0, 0}, {4, 4}};
  CHECK(code_of([&] { fill_closed_curve(two, Dims{8, 8}); }) == Errc::DegenerateCurve);
  const std::vector<Point> line{{0, 0}, {2, 2}, {4, 4}};
  CHECK(fill_closed_curve(line, Dims{8, 8}).lesion_count() == 0);
  CHECK(code_of([&] { fill_closed_curve(line, Dims{8, 8}, true); }) == Errc::DegenerateCurve);
}

TEST_CASE("circle fill area") {
  const auto poly = circle_points(512, 32.0, 32.0, 10.0);
  const auto m = fill_closed_curve(poly, Dims{64, 64});
  const double area = std::numbers::pi * 100.0;
  CHECK(std::abs(static_cast<double>(m.lesion_count()) - area) <= 0.04 * area);
  CHECK(m == reference::fill_pointwise(poly, Dims{64, 64}));
}

TEST_CASE("fill matches the point-in-polygon oracle") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = random_points(rng, testing::uniform_int(rng, 3, 12), -10.0, 50.0);
    const auto curve = spline_points(pts, testing::uniform_int(rng, 1, 8));
    const Dims d{testing::uniform_int(rng, 1, 40), testing::uniform_int(rng, 1, 40)};
    CHECK(fill_closed_curve(curve, d) == reference::fill_pointwise(curve, d));
    CHECK(fill_closed_curve(pts, d) == reference::fill_pointwise(pts, d));
  }
}

TEST_CASE("fill ignores the starting index") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    auto curve = spline_points(random_points(rng, 8, 0.0, 30.0), 6);
    const auto base = fill_closed_curve(curve, Dims{32, 32});
    std::rotate(curve.begin(), curve.begin() + testing::uniform_int(rng, 1, 40), curve.end());
    CHECK(fill_closed_curve(curve, Dims{32, 32}) == base);
  }
}

TEST_CASE("rendered square stays inside the control hull") {
  BorderAnnotation ann{{{4, 4}, {28, 4}, {28, 28}, {4, 28}}, Dims{32, 32}};
  const auto m = render_border(ann);
  const auto hull = testing::convex_hull(ann.control_points);
  CHECK(m.lesion_count() > 0);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      if (m.at(x, y)) CHECK(testing::inside_hull(hull, Point{x + 0.5, y + 0.5}, 1e-9));
    }
  }
  CHECK(!m.at(4, 4));
  CHECK(m.at(16, 16));
}

TEST_CASE("triangle annotation renders a nonempty mask") {
  BorderAnnotation ann{{{2, 2}, {30, 5}, {10, 28}}, Dims{32, 32}};
  CHECK(render_border(ann).lesion_count() > 0);
}

TEST_CASE("rendering converges in the sample count") {
  std::mt19937_64 rng(47);
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 20;
    const double r = 80.0 + 15.0 * std::sin(3 * a) + testing::uniform_real(rng, -3.0, 3.0);
    pts.push_back({128 + r * std::cos(a), 128 + r * std::sin(a)});
  }
  const BorderAnnotation ann{pts, Dims{256, 256}};
  const auto a32 = static_cast<double>(render_border(ann, 32).lesion_count());
  const auto a64 = static_cast<double>(render_border(ann, 64).lesion_count());
  CHECK(std::abs(a64 - a32) < 0.01 * a64);
}

TEST_CASE("annotation text round trip") {
  const BorderAnnotation ann{{{1.5, 2.25}, {10, 0.1}, {-3, 7.125}}, Dims{20, 30}};
  const auto text = format_annotation(ann);
  CHECK(text.rfind("border 3 20 30\n", 0) == 0);
  const auto back = parse_annotation(text);
  CHECK(back.control_points == ann.control_points);
  CHECK(back.target_dims == ann.target_dims);
}

TEST_CASE("annotation parse errors") {
  CHECK(code_of([] { parse_annotation(""); }) == Errc::ParseError);
  CHECK(code_of([] { parse_annotation("curve 3 10 10\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_annotation("border 3 10 10\n1 2\n3 4\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_annotation("border 1 10 10\n1 2\n3 4\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_annotation("border 1 10 10\n1 x\n"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_annotation("border 1 0 10\n1 1\n"); }) == Errc::ParseError);
  const auto two = parse_annotation("border 2 10 10\n1 1\n5 5\n");
  CHECK(code_of([&] { render_border(two); }) == Errc::TooFewControlPoints);
  CHECK(code_of([] { read_annotation("/nonexistent/a.txt"); }) == Errc::MissingFile);
}
