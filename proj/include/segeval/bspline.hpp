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

#ifndef SEGEVAL_BSPLINE_HPP
#define SEGEVAL_BSPLINE_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "segeval/mask.hpp"

namespace segeval {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// How the clicked points relate to the curve.
enum class SplineMode {
  Approximating,  // clicks are the B-spline control polygon
  Interpolating,  // curve passes through each click at its segment midpoint
};

std::string_view to_string(SplineMode mode) noexcept;

/// Points clicked along a lesion border, in pixel units. Points may fall
/// outside the target raster; filling clips them.
struct BorderAnnotation {
  std::vector<Point> control_points;
  Dims target_dims;
};

constexpr int kDefaultSamplesPerSegment = 64;

/// Closed uniform periodic quadratic B-spline through the control polygon.
/// Segment i blends P[i-1], P[i], P[i+1] (indices wrap) and is sampled at
/// t = k / samples_per_segment for k in [0, samples_per_segment). The last
/// sample connects back to the first.
/// Throws TooFewControlPoints when fewer than 3 points are given.
std::vector<Point> spline_points(std::span<const Point> control_points, int samples_per_segment);

/// Control polygon whose approximating spline passes through `clicks` at the
/// middle of each segment: (P[i-1] + 6 P[i] + P[i+1]) / 8 = click[i].
std::vector<Point> interpolating_control_points(std::span<const Point> clicks);

/// Even-odd scanline fill, sampled at pixel centers (x + 0.5, y + 0.5).
/// A polyline of zero enclosed area yields an empty mask, or throws
/// DegenerateCurve when `strict` is set. Fewer than 3 points always throws.
BinaryMask fill_closed_curve(std::span<const Point> polyline, Dims dims, bool strict = false);

BinaryMask render_border(const BorderAnnotation& ann,
                         int samples_per_segment = kDefaultSamplesPerSegment,
                         SplineMode mode = SplineMode::Approximating);

/// Annotation text: a header line `border <M> <width> <height>` followed by
/// M lines `x y`. Throws ParseError, MissingFile.
BorderAnnotation parse_annotation(const std::string& text);
BorderAnnotation read_annotation(const std::filesystem::path& path);
std::string format_annotation(const BorderAnnotation& ann);

}  // namespace segeval

#endif  // SEGEVAL_BSPLINE_HPP
