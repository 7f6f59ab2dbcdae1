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

#ifndef SEGEVAL_RAND_INDEX_HPP
#define SEGEVAL_RAND_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "segeval/mask.hpp"

namespace segeval {

/// Pixel count per distinct label tuple across a stack of label maps.
///
/// Two pixels with the same tuple are interchangeable in any pairwise sum
/// over the stack, which is what lets the Rand-index family run in time
/// linear in the pixel count.
class SignatureHistogram {
 public:
  SignatureHistogram(std::size_t arity, std::vector<std::uint8_t> tuples,
                     std::vector<std::uint64_t> counts);

  std::size_t arity() const noexcept { return arity_; }
  std::size_t class_count() const noexcept { return counts_.size(); }
  std::uint8_t label(std::size_t cls, std::size_t slot) const noexcept {
    return tuples_[cls * arity_ + slot];
  }
  std::span<const std::uint8_t> tuple(std::size_t cls) const noexcept {
    return std::span<const std::uint8_t>(tuples_).subspan(cls * arity_, arity_);
  }
  std::uint64_t count(std::size_t cls) const noexcept { return counts_[cls]; }
  std::uint64_t total() const noexcept;

  /// Sum over label groups of C(n, 2), where pixels are grouped by their
  /// labels in the given slots only. This is the number of unordered pixel
  /// pairs that share a label in every one of those slots.
  std::uint64_t same_label_pairs(std::span<const std::size_t> slots) const;

 private:
  std::size_t arity_;
  std::vector<std::uint8_t> tuples_;
  std::vector<std::uint64_t> counts_;
};

/// Signature histogram plus the class id of every pixel. Class ids are
/// assigned in order of first appearance in row-major scan, so the result is
/// deterministic.
class SignatureIndex {
 public:
  static SignatureIndex build(std::span<const LabelMap* const> maps);
  static SignatureIndex build(const GroundTruthSet& gts);

  const SignatureHistogram& histogram() const noexcept { return histogram_; }
  std::span<const std::uint32_t> pixel_classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return histogram_.class_count(); }
  std::size_t arity() const noexcept { return histogram_.arity(); }

 private:
  SignatureIndex(SignatureHistogram h, std::vector<std::uint32_t> classes)
      : histogram_(std::move(h)), classes_(std::move(classes)) {}

  SignatureHistogram histogram_;
  std::vector<std::uint32_t> classes_;
};

/// Histogram over (test label, gt_1 label, ..., gt_K label).
SignatureHistogram signature_histogram(const LabelMap& test, const GroundTruthSet& gts);

struct PriResult {
  double pri = 0.0;
  double expected = 0.0;
  double npri = 0.0;
  std::uint64_t pair_count = 0;  // C(N, 2)
};

/// Ground-truth statistics for every image of a corpus, used for the
/// dataset-wide expected index. Immutable once built, safe to share between
/// threads. All images must have identical dimensions.
class DatasetPairModel {
 public:
  struct ImageTerm {
    SignatureIndex signatures;  // over the image's own ground truths
    std::size_t rater_count;
    std::uint64_t same_label_pairs;  // sum over raters of pairs sharing a label
  };

  /// Throws EmptyDataset, DimensionMismatch.
  static DatasetPairModel build(std::span<const GroundTruthSet> images);

  Dims dims() const noexcept { return dims_; }
  std::size_t image_count() const noexcept { return images_.size(); }
  const ImageTerm& image(std::size_t phi) const noexcept { return images_[phi]; }

 private:
  DatasetPairModel(Dims dims, std::vector<ImageTerm> images)
      : dims_(dims), images_(std::move(images)) {}

  Dims dims_;
  std::vector<ImageTerm> images_;
};

std::uint64_t pair_count(std::size_t pixels) noexcept;

/// Fraction of ground truths in which pixels i and j share a label.
double pair_probability(const GroundTruthSet& gts, std::size_t i, std::size_t j);

/// Probabilistic Rand index via the signature histogram. Pair counts are
/// accumulated as exact integers; the only rounding is the final division.
/// Throws DimensionMismatch, TooFewPixels.
double probabilistic_rand_index(const LabelMap& test, const GroundTruthSet& gts);

/// Expected index of any segmentation of an image with ground truths `gts`,
/// with the pair prior averaged over every image of `dataset`.
double expected_rand_index(Dims test_dims, const GroundTruthSet& gts,
                           const DatasetPairModel& dataset);

/// (pri - expected) / (1 - expected). Throws DegenerateNormalization when
/// expected >= 1 - 1e-12.
double normalize_rand_index(double pri, double expected);

PriResult normalized_rand_index(const LabelMap& test, const GroundTruthSet& gts,
                                const DatasetPairModel& dataset);

}  // namespace segeval

#endif  // SEGEVAL_RAND_INDEX_HPP
