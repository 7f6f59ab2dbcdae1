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

#include "segeval/reference.hpp"

#include "segeval/error.hpp"

namespace segeval::reference {

ConfusionCounts confusion(const BinaryMask& manual, const BinaryMask& automatic) {
  if (manual.dims() != automatic.dims()) throw Error(Errc::DimensionMismatch, "mask sizes differ");
  ConfusionCounts c;
  for (int y = 0; y < manual.height(); ++y) {
    for (int x = 0; x < manual.width(); ++x) {
      const bool actual = manual.at(x, y);
      const bool detected = automatic.at(x, y);
      if (actual && detected) ++c.tp;
      else if (actual) ++c.fn;
      else if (detected) ++c.fp;
      else ++c.tn;
    }
  }
  return c;
}

double guillod_error(std::span<const BinaryMask> observations, const BinaryMask& automatic) {
  if (observations.empty()) throw Error(Errc::EmptyObservationList, "no observations");
  const double big_n = static_cast<double>(observations.size());
  long double sum = 0.0L;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < automatic.size(); ++i) {
    if (!automatic[i]) continue;
    int votes = 0;
    for (const auto& m : observations) {
      if (m.dims() != automatic.dims()) throw Error(Errc::DimensionMismatch, "mask sizes differ");
      votes += m[i] ? 1 : 0;
    }
    sum += 1.0 - votes / big_n;
    ++inside;
  }
  if (inside == 0) throw Error(Errc::EmptyAutomaticBorder, "automatic border is empty");
  return static_cast<double>(sum / static_cast<long double>(inside) * 100.0L);
}

double pri_pairwise(const LabelMap& test, const GroundTruthSet& gts) {
  if (test.dims() != gts.dims()) throw Error(Errc::DimensionMismatch, "test and ground truth differ");
  const std::size_t n = test.size();
  if (n < 2) throw Error(Errc::TooFewPixels, "need at least two pixels");
  const double k = static_cast<double>(gts.size());
  long double sum = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = test[i] == test[j] ? 1.0 : 0.0;
      int same = 0;
      for (const auto& s : gts.maps()) same += s[i] == s[j] ? 1 : 0;
      const double p = same / k;
      sum += c * p + (1.0 - c) * (1.0 - p);
    }
  }
  const long double pairs = static_cast<long double>(n) * static_cast<long double>(n - 1) / 2.0L;
  return static_cast<double>(sum / pairs);
}

double expected_pri_pairwise(const GroundTruthSet& gts, std::span<const GroundTruthSet> dataset) {
  if (dataset.empty()) throw Error(Errc::EmptyDataset, "no dataset images");
  for (const auto& img : dataset) {
    if (img.dims() != gts.dims()) throw Error(Errc::DimensionMismatch, "dataset sizes differ");
  }
  const std::size_t n = gts.dims().pixels();
  if (n < 2) throw Error(Errc::TooFewPixels, "need at least two pixels");
  const double k = static_cast<double>(gts.size());
  const double phis = static_cast<double>(dataset.size());
  long double sum = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int same = 0;
      for (const auto& s : gts.maps()) same += s[i] == s[j] ? 1 : 0;
      const double p = same / k;
      double prior = 0.0;
      for (const auto& img : dataset) {
        int agree = 0;
        for (const auto& s : img.maps()) agree += s[i] == s[j] ? 1 : 0;
        prior += agree / static_cast<double>(img.size());
      }
      prior /= phis;
      sum += prior * p + (1.0 - prior) * (1.0 - p);
    }
  }
  const long double pairs = static_cast<long double>(n) * static_cast<long double>(n - 1) / 2.0L;
  return static_cast<double>(sum / pairs);
}

BinaryMask fill_pointwise(std::span<const Point> polygon, Dims dims) {
  BinaryMask mask(dims.width, dims.height, false);
  const std::size_t n = polygon.size();
  for (int y = 0; y < dims.height; ++y) {
    for (int x = 0; x < dims.width; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      bool inside = false;
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = polygon[i];
        const Point& b = polygon[j];
        if ((a.y > py) != (b.y > py) && px < (b.x - a.x) * (py - a.y) / (b.y - a.y) + a.x) {
          inside = !inside;
        }
      }
      mask.set(x, y, inside);
    }
  }
  return mask;
}

}  // namespace segeval::reference
