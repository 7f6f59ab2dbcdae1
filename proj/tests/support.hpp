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

#ifndef SEGEVAL_TESTS_SUPPORT_HPP
#define SEGEVAL_TESTS_SUPPORT_HPP

// Generators and independent oracles shared by the unit and acceptance
// suites. Nothing here calls into the optimized kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "segeval/bspline.hpp"
#include "segeval/mask.hpp"

namespace segeval::testing {

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline LabelMap random_label_map(std::mt19937_64& rng, int w, int h, int labels) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (auto& v : px) v = static_cast<std::uint8_t>(uniform_int(rng, 0, labels - 1));
  return LabelMap(w, h, std::move(px));
}

/// Blocky maps: a few rectangles over a background, closer to real
/// segmentations than i.i.d. noise.
inline LabelMap random_region_map(std::mt19937_64& rng, int w, int h, int labels) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  const int rects = uniform_int(rng, 1, 4);
  for (int r = 0; r < rects; ++r) {
    const int x0 = uniform_int(rng, 0, w - 1);
    const int y0 = uniform_int(rng, 0, h - 1);
    const int x1 = uniform_int(rng, x0, w - 1);
    const int y1 = uniform_int(rng, y0, h - 1);
    const auto lab = static_cast<std::uint8_t>(uniform_int(rng, 0, labels - 1));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) px[static_cast<std::size_t>(y * w + x)] = lab;
    }
  }
  return LabelMap(w, h, std::move(px));
}

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density = 0.5) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  std::bernoulli_distribution bit(density);
  for (auto& v : px) v = bit(rng) ? 1 : 0;
  return BinaryMask(w, h, std::move(px));
}

inline GroundTruthSet random_gts(std::mt19937_64& rng, int w, int h, int k, int labels,
                                 bool regions) {
  std::vector<LabelMap> maps;
  std::vector<std::string> ids;
  for (int r = 0; r < k; ++r) {
    maps.push_back(regions ? random_region_map(rng, w, h, labels)
                           : random_label_map(rng, w, h, labels));
    ids.push_back("r" + std::to_string(r));
  }
  return GroundTruthSet(std::move(maps), std::move(ids));
}

/// Mask with lesion exactly at the pixels whose centers fall in the disk.
inline BinaryMask disk_mask(int w, int h, double cx, double cy, double r) {
  BinaryMask m(w, h, false);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      m.set(x, y, dx * dx + dy * dy < r * r);
    }
  }
  return m;
}

inline BinaryMask rect_mask(int w, int h, int x0, int y0, int x1, int y1) {
  BinaryMask m(w, h, false);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) m.set(x, y, true);
  }
  return m;
}

inline std::size_t count_lesion(const BinaryMask& m) {
  std::size_t n = 0;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) n += m.at(x, y) ? 1 : 0;
  }
  return n;
}

/// Andrew's monotone chain; counter-clockwise hull without collinear points.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Signed distance outside a CCW convex hull (<= 0 inside), scaled by edge
/// length so `tol` is in coordinate units.
inline bool inside_hull(const std::vector<Point>& hull, const Point& p, double tol) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double len = std::hypot(ex, ey);
    const double cross = ex * (p.y - a.y) - ey * (p.x - a.x);
    if (cross / len < -tol) return false;
  }
  return true;
}

/// Per-pair Rand-index terms grouped by signature class: the class-pair
/// weighting written out directly (within-class C(n,2), cross-class n_a n_b).
inline double pri_by_class_pairs(const LabelMap& test, const GroundTruthSet& gts) {
  struct Cls {
    std::vector<std::uint8_t> tuple;
    std::uint64_t n;
  };
  std::vector<Cls> classes;
  for (std::size_t i = 0; i < test.size(); ++i) {
    std::vector<std::uint8_t> t{test[i]};
    for (const auto& m : gts.maps()) t.push_back(m[i]);
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Cls& c) { return c.tuple == t; });
    if (it == classes.end()) classes.push_back({t, 1});
    else ++it->n;
  }
  const double k = static_cast<double>(gts.size());
  auto term = [&](const Cls& a, const Cls& b) {
    const double c = a.tuple[0] == b.tuple[0] ? 1.0 : 0.0;
    int same = 0;
    for (std::size_t s = 1; s < a.tuple.size(); ++s) same += a.tuple[s] == b.tuple[s] ? 1 : 0;
    const double p = same / k;
    return c * p + (1.0 - c) * (1.0 - p);
  };
  long double sum = 0.0L;
  for (std::size_t a = 0; a < classes.size(); ++a) {
    const auto na = classes[a].n;
    sum += static_cast<long double>(na * (na - 1) / 2) * term(classes[a], classes[a]);
    for (std::size_t b = a + 1; b < classes.size(); ++b) {
      sum += static_cast<long double>(na * classes[b].n) * term(classes[a], classes[b]);
    }
  }
  const auto n = static_cast<long double>(test.size());
  return static_cast<double>(sum / (n * (n - 1) / 2));
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("segeval_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace segeval::testing

#endif  // SEGEVAL_TESTS_SUPPORT_HPP
