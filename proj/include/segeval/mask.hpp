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

#ifndef SEGEVAL_MASK_HPP
#define SEGEVAL_MASK_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace segeval {

struct Dims {
  int width = 0;
  int height = 0;

  std::size_t pixels() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  friend bool operator==(const Dims&, const Dims&) = default;
};

std::string to_string(Dims d);

/// Lesion/background raster, row-major, pixel (x, y) at index y * width + x.
/// Stored one byte per pixel holding 0 or 1; equality is over pixel values.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool lesion = false);
  /// Any nonzero byte is read as lesion.
  BinaryMask(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  bool operator[](std::size_t i) const noexcept { return pixels_[i] != 0; }
  bool at(int x, int y) const noexcept { return pixels_[index(x, y)] != 0; }
  void set(int x, int y, bool lesion) noexcept { pixels_[index(x, y)] = lesion ? 1 : 0; }
  void set(std::size_t i, bool lesion) noexcept { pixels_[i] = lesion ? 1 : 0; }

  /// 0/1 per pixel.
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  std::size_t lesion_count() const noexcept;
  std::size_t background_count() const noexcept { return size() - lesion_count(); }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
           static_cast<std::size_t>(x);
  }

  Dims dims_;
  std::vector<std::uint8_t> pixels_;
};

/// Small-integer partition of an image. Labels lie in [0, 255).
class LabelMap {
 public:
  static constexpr int kMaxLabels = 255;

  LabelMap() = default;
  LabelMap(int width, int height, std::uint8_t fill = 0);
  LabelMap(int width, int height, std::vector<std::uint8_t> labels);

  int width() const noexcept { return dims_.width; }
  int height() const noexcept { return dims_.height; }
  Dims dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return labels_.size(); }

  std::uint8_t operator[](std::size_t i) const noexcept { return labels_[i]; }
  std::uint8_t at(int x, int y) const noexcept {
    return labels_[static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
                   static_cast<std::size_t>(x)];
  }
  std::span<const std::uint8_t> labels() const noexcept { return labels_; }

  /// One past the largest label present.
  int label_bound() const noexcept { return bound_; }

  friend bool operator==(const LabelMap& a, const LabelMap& b) {
    return a.dims_ == b.dims_ && a.labels_ == b.labels_;
  }

 private:
  Dims dims_;
  std::vector<std::uint8_t> labels_;
  int bound_ = 0;
};

/// K >= 1 manual partitions of one image, each tagged with a unique rater id.
class GroundTruthSet {
 public:
  GroundTruthSet(std::vector<LabelMap> maps, std::vector<std::string> rater_ids);
  static GroundTruthSet from_masks(const std::vector<BinaryMask>& masks,
                                   std::vector<std::string> rater_ids);

  std::size_t size() const noexcept { return maps_.size(); }
  Dims dims() const noexcept { return maps_.front().dims(); }
  const LabelMap& operator[](std::size_t k) const noexcept { return maps_[k]; }
  const std::vector<LabelMap>& maps() const noexcept { return maps_; }
  const std::vector<std::string>& rater_ids() const noexcept { return rater_ids_; }

 private:
  std::vector<LabelMap> maps_;
  std::vector<std::string> rater_ids_;
};

bool dims_match(Dims a, Dims b) noexcept;

template <class A, class B>
bool dims_match(const A& a, const B& b) noexcept {
  return dims_match(a.dims(), b.dims());
}

LabelMap to_label_map(const BinaryMask& m);
/// Nonzero labels become lesion.
BinaryMask to_binary_mask(const LabelMap& m);
BinaryMask complement(const BinaryMask& m);

}  // namespace segeval

#endif  // SEGEVAL_MASK_HPP
