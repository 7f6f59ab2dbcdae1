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

#include "segeval/mask.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "segeval/error.hpp"

namespace segeval {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyManualBorder: return "EmptyManualBorder";
    case Errc::EmptyBackground: return "EmptyBackground";
    case Errc::EmptyAutomaticBorder: return "EmptyAutomaticBorder";
    case Errc::EmptyObservationList: return "EmptyObservationList";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::TooFewPixels: return "TooFewPixels";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::DegenerateNormalization: return "DegenerateNormalization";
    case Errc::TooFewControlPoints: return "TooFewControlPoints";
    case Errc::DegenerateCurve: return "DegenerateCurve";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::MissingFile: return "MissingFile";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::LayoutMismatch: return "LayoutMismatch";
  }
  return "Unknown";
}

std::string to_string(Dims d) {
  return std::to_string(d.width) + "x" + std::to_string(d.height);
}

namespace {

void check_dims(int width, int height, std::size_t length) {
  if (width < 1 || height < 1) {
    throw Error(Errc::InvalidArgument, "raster dimensions must be positive, got " +
                                           std::to_string(width) + "x" + std::to_string(height));
  }
  if (length != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(Errc::InvalidArgument, "pixel buffer length " + std::to_string(length) +
                                           " does not match " + std::to_string(width) + "x" +
                                           std::to_string(height));
  }
}

}  // namespace

BinaryMask::BinaryMask(int width, int height, bool lesion) : dims_{width, height} {
  check_dims(width, height, dims_.pixels());
  pixels_.assign(dims_.pixels(), lesion ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> pixels)
    : dims_{width, height}, pixels_(std::move(pixels)) {
  check_dims(width, height, pixels_.size());
  for (auto& p : pixels_) p = p != 0 ? 1 : 0;
}

std::size_t BinaryMask::lesion_count() const noexcept {
  return std::accumulate(pixels_.begin(), pixels_.end(), std::size_t{0});
}

LabelMap::LabelMap(int width, int height, std::uint8_t fill) : dims_{width, height} {
  check_dims(width, height, dims_.pixels());
  if (fill >= kMaxLabels) throw Error(Errc::InvalidArgument, "label 255 is out of range");
  labels_.assign(dims_.pixels(), fill);
  bound_ = fill + 1;
}

LabelMap::LabelMap(int width, int height, std::vector<std::uint8_t> labels)
    : dims_{width, height}, labels_(std::move(labels)) {
  check_dims(width, height, labels_.size());
  const auto top = *std::max_element(labels_.begin(), labels_.end());
  if (top >= kMaxLabels) throw Error(Errc::InvalidArgument, "label 255 is out of range");
  bound_ = top + 1;
}

GroundTruthSet::GroundTruthSet(std::vector<LabelMap> maps, std::vector<std::string> rater_ids)
    : maps_(std::move(maps)), rater_ids_(std::move(rater_ids)) {
  if (maps_.empty()) throw Error(Errc::InvalidArgument, "ground-truth set needs at least one map");
  if (maps_.size() != rater_ids_.size()) {
    throw Error(Errc::InvalidArgument, "ground-truth set has " + std::to_string(maps_.size()) +
                                           " maps but " + std::to_string(rater_ids_.size()) +
                                           " rater ids");
  }
  std::set<std::string> seen;
  for (const auto& id : rater_ids_) {
    if (!seen.insert(id).second) throw Error(Errc::InvalidArgument, "duplicate rater id '" + id + "'");
  }
  for (const auto& m : maps_) {
    if (!dims_match(m, maps_.front())) {
      throw Error(Errc::DimensionMismatch, "ground-truth maps differ in size: " +
                                               to_string(m.dims()) + " vs " +
                                               to_string(maps_.front().dims()));
    }
  }
}

GroundTruthSet GroundTruthSet::from_masks(const std::vector<BinaryMask>& masks,
                                          std::vector<std::string> rater_ids) {
  std::vector<LabelMap> maps;
  maps.reserve(masks.size());
  for (const auto& m : masks) maps.push_back(to_label_map(m));
  return GroundTruthSet(std::move(maps), std::move(rater_ids));
}

bool dims_match(Dims a, Dims b) noexcept { return a == b; }

LabelMap to_label_map(const BinaryMask& m) {
  auto px = m.pixels();
  return LabelMap(m.width(), m.height(), std::vector<std::uint8_t>(px.begin(), px.end()));
}

BinaryMask to_binary_mask(const LabelMap& m) {
  auto px = m.labels();
  return BinaryMask(m.width(), m.height(), std::vector<std::uint8_t>(px.begin(), px.end()));
}

BinaryMask complement(const BinaryMask& m) {
  std::vector<std::uint8_t> flipped(m.size());
  auto px = m.pixels();
  std::transform(px.begin(), px.end(), flipped.begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v ^ 1U; });
  return BinaryMask(m.width(), m.height(), std::move(flipped));
}

}  // namespace segeval
