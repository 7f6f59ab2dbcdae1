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

#ifndef SEGEVAL_SYNTHETIC_HPP
#define SEGEVAL_SYNTHETIC_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "segeval/mask.hpp"

namespace segeval {

/// Elliptical lesions with per-rater bias and jitter. The first rater's
/// borders are written as annotation files, the rest as PGM masks; method
/// masks are scaled and shifted copies of the lesion.
struct SyntheticCorpusSpec {
  Dims dims{96, 64};
  int benign = 4;
  int melanoma = 2;
  std::vector<std::string> raters{"R1", "R2", "R3"};
  std::vector<std::string> methods{"M1", "M2"};
  std::uint64_t seed = 1;
};

/// Writes masks, annotations and manifest.json under `dir`; returns the
/// manifest path. Output is a pure function of `spec`.
std::filesystem::path write_synthetic_corpus(const std::filesystem::path& dir,
                                             const SyntheticCorpusSpec& spec);

}  // namespace segeval

#endif  // SEGEVAL_SYNTHETIC_HPP
