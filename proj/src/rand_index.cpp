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

#include "segeval/rand_index.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <utility>

#include "segeval/error.hpp"

namespace segeval {

namespace {

// Remap tables up to this many entries are dense arrays; beyond it a hash
// map is used.
constexpr std::uint64_t kDenseKeyLimit = std::uint64_t{1} << 22;

std::uint64_t choose2(std::uint64_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

void require_same_dims(Dims expected, Dims got, const char* what) {
  if (expected != got) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + " " + to_string(got) + " vs " + to_string(expected));
  }
}

}  // namespace

std::uint64_t pair_count(std::size_t pixels) noexcept { return choose2(pixels); }

SignatureHistogram::SignatureHistogram(std::size_t arity, std::vector<std::uint8_t> tuples,
                                       std::vector<std::uint64_t> counts)
    : arity_(arity), tuples_(std::move(tuples)), counts_(std::move(counts)) {
  if (tuples_.size() != arity_ * counts_.size()) {
    throw Error(Errc::InvalidArgument, "signature tuple table does not match class count");
  }
}

std::uint64_t SignatureHistogram::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t SignatureHistogram::same_label_pairs(std::span<const std::size_t> slots) const {
  if (slots.size() > 8) throw Error(Errc::InvalidArgument, "at most 8 slots can be grouped");
  for (auto s : slots) {
    if (s >= arity_) throw Error(Errc::IndexOutOfRange, "slot " + std::to_string(s));
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;
  keyed.reserve(counts_.size());
  for (std::size_t c = 0; c < counts_.size(); ++c) {
    std::uint64_t key = 0;
    for (auto s : slots) key = (key << 8) | label(c, s);
    keyed.emplace_back(key, counts_[c]);
  }
  std::sort(keyed.begin(), keyed.end());
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < keyed.size();) {
    std::uint64_t run = 0;
    std::size_t j = i;
    for (; j < keyed.size() && keyed[j].first == keyed[i].first; ++j) run += keyed[j].second;
    pairs += choose2(run);
    i = j;
  }
  return pairs;
}

SignatureIndex SignatureIndex::build(std::span<const LabelMap* const> maps) {
  if (maps.empty()) throw Error(Errc::InvalidArgument, "signature needs at least one map");
  const Dims dims = maps.front()->dims();
  for (const auto* m : maps) require_same_dims(dims, m->dims(), "label map");

  const std::size_t n = dims.pixels();
  std::vector<std::uint32_t> ids(n, 0);
  std::vector<std::uint8_t> tuples;  // empty tuple for the single start class
  std::size_t classes = 1;
  std::size_t arity = 0;

  // Refine the partition one map at a time: (old class, label) -> new class.
  for (const auto* m : maps) {
    const auto bound = static_cast<std::uint64_t>(m->label_bound());
    const auto labels = m->labels();
    std::vector<std::uint8_t> next_tuples;
    std::uint32_t next_classes = 0;
    auto emit = [&](std::uint32_t old_id, std::uint8_t lab) {
      const auto* src = tuples.data() + static_cast<std::size_t>(old_id) * arity;
      next_tuples.insert(next_tuples.end(), src, src + arity);
      next_tuples.push_back(lab);
      return next_classes++;
    };

    const std::uint64_t space = classes * bound;
    if (space <= kDenseKeyLimit) {
      std::vector<std::int32_t> remap(space, -1);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t key = ids[i] * bound + labels[i];
        if (remap[key] < 0) remap[key] = static_cast<std::int32_t>(emit(ids[i], labels[i]));
        ids[i] = static_cast<std::uint32_t>(remap[key]);
      }
    } else {
      std::unordered_map<std::uint64_t, std::uint32_t> remap;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t key = ids[i] * bound + labels[i];
        auto it = remap.find(key);
        if (it == remap.end()) it = remap.emplace(key, emit(ids[i], labels[i])).first;
        ids[i] = it->second;
      }
    }
    tuples = std::move(next_tuples);
    classes = next_classes;
    ++arity;
  }

  std::vector<std::uint64_t> counts(classes, 0);
  for (auto id : ids) ++counts[id];
  return SignatureIndex(SignatureHistogram(arity, std::move(tuples), std::move(counts)),
                        std::move(ids));
}

SignatureIndex SignatureIndex::build(const GroundTruthSet& gts) {
  std::vector<const LabelMap*> maps;
  for (const auto& m : gts.maps()) maps.push_back(&m);
  return build(maps);
}

SignatureHistogram signature_histogram(const LabelMap& test, const GroundTruthSet& gts) {
  require_same_dims(gts.dims(), test.dims(), "test map");
  std::vector<const LabelMap*> maps{&test};
  for (const auto& m : gts.maps()) maps.push_back(&m);
  return SignatureIndex::build(maps).histogram();
}

double pair_probability(const GroundTruthSet& gts, std::size_t i, std::size_t j) {
  const std::size_t n = gts.dims().pixels();
  if (i >= n || j >= n) {
    throw Error(Errc::IndexOutOfRange, "pixel pair (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ") outside " +
                                           std::to_string(n) + " pixels");
  }
  if (i == j) throw Error(Errc::InvalidArgument, "pixel pair must be two distinct pixels");
  std::size_t same = 0;
  for (const auto& m : gts.maps()) same += m[i] == m[j] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(gts.size());
}

double probabilistic_rand_index(const LabelMap& test, const GroundTruthSet& gts) {
  const auto hist = signature_histogram(test, gts);
  const std::uint64_t n = hist.total();
  if (n < 2) throw Error(Errc::TooFewPixels, "need at least two pixels");
  const auto k = static_cast<std::uint64_t>(gts.size());

  // K * sum over pairs of [c p + (1-c)(1-p)]
  //   = K * (P - sum c) - sum_k same_k + 2 * sum_k same(test and k)
  using Wide = __int128;
  const std::size_t test_slot[] = {0};
  Wide num = static_cast<Wide>(k) * (static_cast<Wide>(choose2(n)) -
                                     static_cast<Wide>(hist.same_label_pairs(test_slot)));
  for (std::size_t r = 1; r <= k; ++r) {
    const std::size_t gt_slot[] = {r};
    const std::size_t joint_slots[] = {0, r};
    num -= static_cast<Wide>(hist.same_label_pairs(gt_slot));
    num += 2 * static_cast<Wide>(hist.same_label_pairs(joint_slots));
  }
  const Wide den = static_cast<Wide>(k) * static_cast<Wide>(choose2(n));
  return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

DatasetPairModel DatasetPairModel::build(std::span<const GroundTruthSet> images) {
  if (images.empty()) throw Error(Errc::EmptyDataset, "dataset has no images");
  const Dims dims = images.front().dims();
  for (std::size_t phi = 0; phi < images.size(); ++phi) {
    if (images[phi].dims() != dims) {
      throw Error(Errc::DimensionMismatch,
                  "dataset image " + std::to_string(phi) + " is " + to_string(images[phi].dims()) +
                      " but the expected index needs every image at " + to_string(dims));
    }
  }

  std::vector<std::optional<ImageTerm>> built(images.size());
  const auto count = static_cast<std::ptrdiff_t>(images.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t phi = 0; phi < count; ++phi) {
    const auto& gts = images[static_cast<std::size_t>(phi)];
    auto sig = SignatureIndex::build(gts);
    std::uint64_t same = 0;
    for (std::size_t r = 0; r < gts.size(); ++r) {
      const std::size_t slot[] = {r};
      same += sig.histogram().same_label_pairs(slot);
    }
    built[static_cast<std::size_t>(phi)].emplace(ImageTerm{std::move(sig), gts.size(), same});
  }
  std::vector<ImageTerm> terms;
  terms.reserve(built.size());
  for (auto& t : built) terms.push_back(std::move(*t));
  return DatasetPairModel(dims, std::move(terms));
}

namespace {

// Sum over ground-truth pairs (k' of image phi, k of the current image) of the
// number of pixel pairs sharing a label in both.
std::uint64_t joint_same_pairs(const DatasetPairModel::ImageTerm& other,
                               const SignatureIndex& current) {
  const auto a_ids = other.signatures.pixel_classes();
  const auto b_ids = current.pixel_classes();
  const std::uint64_t b_classes = current.class_count();
  const std::uint64_t space = other.signatures.class_count() * b_classes;
  const std::size_t n = a_ids.size();

  std::vector<std::pair<std::uint64_t, std::uint64_t>> joint;  // (key, count)
  if (space <= kDenseKeyLimit) {
    std::vector<std::uint64_t> counts(space, 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[a_ids[i] * b_classes + b_ids[i]];
    for (std::uint64_t key = 0; key < space; ++key) {
      if (counts[key] != 0) joint.emplace_back(key, counts[key]);
    }
  } else {
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    for (std::size_t i = 0; i < n; ++i) ++counts[a_ids[i] * b_classes + b_ids[i]];
    joint.assign(counts.begin(), counts.end());
    std::sort(joint.begin(), joint.end());
  }

  const auto& ha = other.signatures.histogram();
  const auto& hb = current.histogram();
  const std::size_t arity = ha.arity() + hb.arity();
  std::vector<std::uint8_t> tuples;
  std::vector<std::uint64_t> counts;
  tuples.reserve(joint.size() * arity);
  counts.reserve(joint.size());
  for (const auto& [key, cnt] : joint) {
    const auto ta = ha.tuple(key / b_classes);
    const auto tb = hb.tuple(key % b_classes);
    tuples.insert(tuples.end(), ta.begin(), ta.end());
    tuples.insert(tuples.end(), tb.begin(), tb.end());
    counts.push_back(cnt);
  }
  const SignatureHistogram combined(arity, std::move(tuples), std::move(counts));

  std::uint64_t same = 0;
  for (std::size_t ka = 0; ka < ha.arity(); ++ka) {
    for (std::size_t kb = 0; kb < hb.arity(); ++kb) {
      const std::size_t slots[] = {ka, ha.arity() + kb};
      same += combined.same_label_pairs(slots);
    }
  }
  return same;
}

}  // namespace

double expected_rand_index(Dims test_dims, const GroundTruthSet& gts,
                           const DatasetPairModel& dataset) {
  if (dataset.image_count() == 0) throw Error(Errc::EmptyDataset, "dataset has no images");
  require_same_dims(dataset.dims(), test_dims, "test image");
  require_same_dims(dataset.dims(), gts.dims(), "ground truths");
  const std::uint64_t n = test_dims.pixels();
  if (n < 2) throw Error(Errc::TooFewPixels, "need at least two pixels");

  const auto current = SignatureIndex::build(gts);
  const auto k = static_cast<long double>(gts.size());
  std::uint64_t same_current = 0;
  for (std::size_t r = 0; r < gts.size(); ++r) {
    const std::size_t slot[] = {r};
    same_current += current.histogram().same_label_pairs(slot);
  }

  const std::size_t phis = dataset.image_count();
  std::vector<std::uint64_t> joint(phis, 0);
  const auto count = static_cast<std::ptrdiff_t>(phis);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t phi = 0; phi < count; ++phi) {
    joint[static_cast<std::size_t>(phi)] =
        joint_same_pairs(dataset.image(static_cast<std::size_t>(phi)), current);
  }

  // Sums over pixel pairs of p', p and p' p, each an exact integer ratio.
  long double sum_prior = 0.0L;
  long double sum_prior_times_p = 0.0L;
  for (std::size_t phi = 0; phi < phis; ++phi) {
    const auto& term = dataset.image(phi);
    const auto k_phi = static_cast<long double>(term.rater_count);
    sum_prior += static_cast<long double>(term.same_label_pairs) / k_phi;
    sum_prior_times_p += static_cast<long double>(joint[phi]) / (k_phi * k);
  }
  sum_prior /= static_cast<long double>(phis);
  sum_prior_times_p /= static_cast<long double>(phis);
  const long double sum_p = static_cast<long double>(same_current) / k;
  const auto pairs = static_cast<long double>(choose2(n));
  return static_cast<double>((pairs - sum_prior - sum_p + 2.0L * sum_prior_times_p) / pairs);
}

double normalize_rand_index(double pri, double expected) {
  constexpr double kDegenerate = 1e-12;
  if (expected >= 1.0 - kDegenerate) {
    throw Error(Errc::DegenerateNormalization,
                "expected index is 1; the normalized index is undefined");
  }
  return (pri - expected) / (1.0 - expected);
}

PriResult normalized_rand_index(const LabelMap& test, const GroundTruthSet& gts,
                                const DatasetPairModel& dataset) {
  PriResult r;
  r.pri = probabilistic_rand_index(test, gts);
  r.expected = expected_rand_index(test.dims(), gts, dataset);
  r.npri = normalize_rand_index(r.pri, r.expected);
  r.pair_count = pair_count(test.size());
  return r;
}

}  // namespace segeval
