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

#ifndef SEGEVAL_REFERENCE_HPP
#define SEGEVAL_REFERENCE_HPP

// Serial, literal implementations of every kernel in the library. They share
// no code with the optimized paths and exist only for tests and benchmarks.
// The pairwise routines are quadratic in the pixel count; keep inputs to a
// few thousand pixels.

#include <span>
#include <vector>

#include "segeval/bspline.hpp"
#include "segeval/confusion.hpp"
#include "segeval/mask.hpp"

namespace segeval::reference {

ConfusionCounts confusion(const BinaryMask& manual, const BinaryMask& automatic);

/// Recounts votes pixel by pixel and averages 1 - n/N over the border.
double guillod_error(std::span<const BinaryMask> observations, const BinaryMask& automatic);

/// Literal double loop over all pixel pairs i < j.
/// Throws DimensionMismatch, TooFewPixels.
double pri_pairwise(const LabelMap& test, const GroundTruthSet& gts);

/// Literal expected index: for each pair, p' averaged over every dataset
/// image's ground truths, then p' p + (1 - p')(1 - p).
double expected_pri_pairwise(const GroundTruthSet& gts, std::span<const GroundTruthSet> dataset);

/// Even-odd point-in-polygon test at every pixel center.
BinaryMask fill_pointwise(std::span<const Point> polygon, Dims dims);

}  // namespace segeval::reference

#endif  // SEGEVAL_REFERENCE_HPP
