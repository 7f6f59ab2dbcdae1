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

#include "segeval/prob_border.hpp"

#include <cstddef>

#include "segeval/error.hpp"

namespace segeval {

ProbabilityImage::ProbabilityImage(Dims dims, std::vector<std::uint32_t> lesion_votes,
                                   std::uint32_t observations)
    : dims_(dims), votes_(std::move(lesion_votes)), observations_(observations) {
  if (observations_ == 0) throw Error(Errc::EmptyObservationList, "N must be at least 1");
  if (votes_.size() != dims_.pixels()) {
    throw Error(Errc::InvalidArgument, "vote buffer does not match " + to_string(dims_));
  }
  for (auto v : votes_) {
    if (v > observations_) throw Error(Errc::InvalidArgument, "vote count exceeds N");
  }
}

GrayImage ProbabilityImage::to_gray() const {
  GrayImage img{dims_, std::vector<std::uint8_t>(votes_.size())};
  const std::uint64_t n = observations_;
  for (std::size_t i = 0; i < votes_.size(); ++i) {
    // floor(255 * (N - v) / N + 1/2) in integers
    const std::uint64_t miss = n - votes_[i];
    img.values[i] = static_cast<std::uint8_t>((2 * 255 * miss + n) / (2 * n));
  }
  return img;
}

ProbabilityImage build_probability_image(std::span<const BinaryMask> observations) {
  if (observations.empty()) {
    throw Error(Errc::EmptyObservationList, "probability image needs at least one observation");
  }
  const Dims dims = observations.front().dims();
  for (const auto& m : observations) {
    if (m.dims() != dims) {
      throw Error(Errc::DimensionMismatch,
                  "observation " + to_string(m.dims()) + " vs " + to_string(dims));
    }
  }
  std::vector<std::uint32_t> votes(dims.pixels(), 0);
  const auto n = static_cast<std::ptrdiff_t>(votes.size());
  for (const auto& m : observations) {
    const std::uint8_t* px = m.pixels().data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) votes[static_cast<std::size_t>(i)] += px[i];
  }
  return ProbabilityImage(dims, std::move(votes), static_cast<std::uint32_t>(observations.size()));
}

double guillod_error(const ProbabilityImage& prob, const BinaryMask& automatic) {
  if (prob.dims() != automatic.dims()) {
    throw Error(Errc::DimensionMismatch, "probability image " + to_string(prob.dims()) +
                                             " vs automatic " + to_string(automatic.dims()));
  }
  const std::uint8_t* a = automatic.pixels().data();
  const std::uint32_t* v = prob.votes().data();
  const std::uint64_t big_n = prob.observations();
  const auto n = static_cast<std::ptrdiff_t>(automatic.size());

  // Sum of N * p over the border is an integer; divide once at the end.
  std::uint64_t misses = 0;
  std::uint64_t inside = 0;
#pragma omp parallel for reduction(+ : misses, inside) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (a[i]) {
      misses += big_n - v[i];
      ++inside;
    }
  }
  if (inside == 0) throw Error(Errc::EmptyAutomaticBorder, "automatic border has no lesion pixels");
  return static_cast<double>(misses) / (static_cast<double>(big_n) * static_cast<double>(inside)) *
         100.0;
}

}  // namespace segeval
