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

#ifndef SEGEVAL_PROB_BORDER_HPP
#define SEGEVAL_PROB_BORDER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "segeval/image_io.hpp"
#include "segeval/mask.hpp"

namespace segeval {

/// Per-pixel misclassification probability p = 1 - n/N, where n counts the
/// observations that marked the pixel as lesion. Only the integer counts are
/// stored so every derived quantity is exact.
class ProbabilityImage {
 public:
  ProbabilityImage(Dims dims, std::vector<std::uint32_t> lesion_votes, std::uint32_t observations);

  Dims dims() const noexcept { return dims_; }
  std::uint32_t observations() const noexcept { return observations_; }
  std::uint32_t votes(std::size_t i) const noexcept { return votes_[i]; }
  std::span<const std::uint32_t> votes() const noexcept { return votes_; }
  double p(std::size_t i) const noexcept {
    return static_cast<double>(observations_ - votes_[i]) / static_cast<double>(observations_);
  }
  double p(int x, int y) const noexcept {
    return p(static_cast<std::size_t>(y) * static_cast<std::size_t>(dims_.width) +
             static_cast<std::size_t>(x));
  }

  /// p scaled to 0..255, rounded half up.
  GrayImage to_gray() const;

 private:
  Dims dims_;
  std::vector<std::uint32_t> votes_;
  std::uint32_t observations_;
};

/// N is exactly observations.size(); whether the automatic border is one of
/// them is the caller's choice.
ProbabilityImage build_probability_image(std::span<const BinaryMask> observations);

/// Mean misclassification probability over the automatic lesion pixels, in
/// percent. Throws EmptyAutomaticBorder, DimensionMismatch.
double guillod_error(const ProbabilityImage& prob, const BinaryMask& automatic);

}  // namespace segeval

#endif  // SEGEVAL_PROB_BORDER_HPP
