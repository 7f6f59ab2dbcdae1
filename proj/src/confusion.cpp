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

#include "segeval/confusion.hpp"

#include <cstddef>

#include "segeval/error.hpp"

namespace segeval {

ConfusionCounts confusion(const BinaryMask& manual, const BinaryMask& automatic) {
  if (!dims_match(manual, automatic)) {
    throw Error(Errc::DimensionMismatch, "manual " + to_string(manual.dims()) + " vs automatic " +
                                             to_string(automatic.dims()));
  }
  const std::uint8_t* m = manual.pixels().data();
  const std::uint8_t* a = automatic.pixels().data();
  const auto n = static_cast<std::ptrdiff_t>(manual.size());

  // Only two sums are needed per pass; the other two follow from the totals.
  std::uint64_t both = 0;
  std::uint64_t manual_lesion = 0;
  std::uint64_t auto_lesion = 0;
#pragma omp parallel for reduction(+ : both, manual_lesion, auto_lesion) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    both += static_cast<std::uint64_t>(m[i] & a[i]);
    manual_lesion += m[i];
    auto_lesion += a[i];
  }
  ConfusionCounts c;
  c.tp = both;
  c.fn = manual_lesion - both;
  c.fp = auto_lesion - both;
  c.tn = static_cast<std::uint64_t>(n) - c.tp - c.fn - c.fp;
  return c;
}

namespace {

double percent(std::uint64_t num, std::uint64_t den) {
  return static_cast<double>(num) / static_cast<double>(den) * 100.0;
}

void require_manual(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) throw Error(Errc::EmptyManualBorder, "manual border has no lesion pixels");
}

}  // namespace

double xor_error(const ConfusionCounts& c) {
  require_manual(c);
  return percent(c.fp + c.fn, c.tp + c.fn);
}

double sensitivity(const ConfusionCounts& c) {
  require_manual(c);
  return percent(c.tp, c.tp + c.fn);
}

double specificity(const ConfusionCounts& c) {
  if (c.fp + c.tn == 0) {
    throw Error(Errc::EmptyBackground, "manual border covers the whole image");
  }
  return percent(c.tn, c.fp + c.tn);
}

double precision(const ConfusionCounts& c) {
  if (c.tp + c.fp == 0) {
    throw Error(Errc::EmptyAutomaticBorder, "automatic border has no lesion pixels");
  }
  return percent(c.tp, c.tp + c.fp);
}

double recall(const ConfusionCounts& c) { return sensitivity(c); }

double error_probability(const ConfusionCounts& c) {
  if (c.total() == 0) throw Error(Errc::EmptyInput, "no pixels");
  return percent(c.fp + c.fn, c.total());
}

}  // namespace segeval
