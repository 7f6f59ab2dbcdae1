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

#ifndef SEGEVAL_CONFUSION_HPP
#define SEGEVAL_CONFUSION_HPP

#include <cstdint>

#include "segeval/mask.hpp"

namespace segeval {

/// Per-pixel agreement between a manual (actual) and automatic (detected)
/// mask. Counts always sum to the pixel count of the compared masks.
struct ConfusionCounts {
  std::uint64_t tp = 0;  // lesion in both
  std::uint64_t fn = 0;  // manual lesion, automatic background
  std::uint64_t fp = 0;  // manual background, automatic lesion
  std::uint64_t tn = 0;  // background in both

  std::uint64_t total() const noexcept { return tp + fn + fp + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Manual mask first. Throws DimensionMismatch.
ConfusionCounts confusion(const BinaryMask& manual, const BinaryMask& automatic);

// All measures below return percentages computed from the exact counts.
// A zero denominator raises the matching Errc instead of producing NaN.

/// Symmetric-difference area over manual area. Not clamped: can exceed 100.
double xor_error(const ConfusionCounts& c);
double sensitivity(const ConfusionCounts& c);
double specificity(const ConfusionCounts& c);
double precision(const ConfusionCounts& c);
/// Identical to sensitivity.
double recall(const ConfusionCounts& c);
double error_probability(const ConfusionCounts& c);

}  // namespace segeval

#endif  // SEGEVAL_CONFUSION_HPP
