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

#include "segeval/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "segeval/bspline.hpp"
#include "segeval/dataset.hpp"
#include "segeval/error.hpp"
#include "segeval/image_io.hpp"

namespace segeval {

namespace {

// Deterministic in [lo, hi) for a given engine state on every platform.
double draw(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Ellipse {
  double cx, cy, rx, ry, angle;
};

std::vector<Point> outline(const Ellipse& e, int points, double scale, double dx, double dy,
                           double jitter, std::mt19937_64& rng) {
  std::vector<Point> pts;
  for (int i = 0; i < points; ++i) {
    const double t = 2.0 * std::numbers::pi * i / points;
    const double r = scale * (1.0 + (jitter > 0 ? draw(rng, -jitter, jitter) : 0.0));
    const double ux = e.rx * r * std::cos(t);
    const double uy = e.ry * r * std::sin(t);
    pts.push_back({e.cx + dx + ux * std::cos(e.angle) - uy * std::sin(e.angle),
                   e.cy + dy + ux * std::sin(e.angle) + uy * std::cos(e.angle)});
  }
  return pts;
}

}  // namespace

std::filesystem::path write_synthetic_corpus(const std::filesystem::path& dir,
                                             const SyntheticCorpusSpec& spec) {
  if (spec.raters.empty()) throw Error(Errc::InvalidArgument, "synthetic corpus needs a rater");
  std::filesystem::create_directories(dir / "gt");
  std::filesystem::create_directories(dir / "auto");
  std::mt19937_64 rng(spec.seed);

  DatasetManifest manifest;
  manifest.base_dir = dir;
  manifest.raters = spec.raters;
  manifest.methods = spec.methods;

  // Each rater draws consistently larger or smaller than the lesion.
  std::vector<double> bias;
  for (std::size_t r = 0; r < spec.raters.size(); ++r) {
    bias.push_back(1.0 + 0.08 * (static_cast<double>(r) - 0.5 * static_cast<double>(spec.raters.size() - 1)) +
                   draw(rng, -0.02, 0.02));
  }

  const int total = spec.benign + spec.melanoma;
  const double w = spec.dims.width;
  const double h = spec.dims.height;
  for (int img = 0; img < total; ++img) {
    ImageEntry e;
    char id[32];
    std::snprintf(id, sizeof id, "img%03d", img + 1);
    e.id = id;
    e.dims = spec.dims;
    e.diagnosis = img < spec.benign ? Diagnosis::Benign : Diagnosis::Melanoma;

    const double base = std::min(w, h);
    const Ellipse lesion{w * draw(rng, 0.4, 0.6), h * draw(rng, 0.4, 0.6), base * draw(rng, 0.18, 0.3),
                         base * draw(rng, 0.15, 0.25), draw(rng, 0.0, std::numbers::pi)};
    // Melanomas get a more irregular outline.
    const double jitter = e.diagnosis == Diagnosis::Melanoma ? 0.08 : 0.04;

    for (std::size_t r = 0; r < spec.raters.size(); ++r) {
      BorderAnnotation ann{outline(lesion, 16, bias[r], 0.0, 0.0, jitter, rng), spec.dims};
      std::string rel = "gt/" + e.id + "_" + spec.raters[r];
      if (r == 0) {
        rel += ".txt";
        std::ofstream(dir / rel, std::ios::binary) << format_annotation(ann);
      } else {
        rel += ".pgm";
        write_mask_pgm(dir / rel, render_border(ann));
      }
      e.ground_truth.emplace_back(spec.raters[r], rel);
    }

    for (std::size_t m = 0; m < spec.methods.size(); ++m) {
      const double scale = 1.0 + 0.15 * static_cast<double>(m) + draw(rng, -0.05, 0.05);
      const double dx = draw(rng, -2.0, 2.0) * (1.0 + static_cast<double>(m));
      const double dy = draw(rng, -2.0, 2.0) * (1.0 + static_cast<double>(m));
      BorderAnnotation ann{outline(lesion, 24, scale, dx, dy, jitter, rng), spec.dims};
      const std::string rel = "auto/" + e.id + "_" + spec.methods[m] + ".pgm";
      write_mask_pgm(dir / rel, render_border(ann));
      e.methods.emplace_back(spec.methods[m], rel);
    }
    manifest.images.push_back(std::move(e));
  }

  const auto path = dir / "manifest.json";
  save_manifest(path, manifest);
  return path;
}

}  // namespace segeval
