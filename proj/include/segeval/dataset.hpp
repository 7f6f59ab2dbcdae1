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

#ifndef SEGEVAL_DATASET_HPP
#define SEGEVAL_DATASET_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "segeval/bspline.hpp"
#include "segeval/mask.hpp"

namespace segeval {

enum class Diagnosis { Benign, Melanoma };

std::string_view to_string(Diagnosis d) noexcept;
std::optional<Diagnosis> parse_diagnosis(std::string_view s) noexcept;

/// (id, path) pairs; paths are relative to the manifest directory.
using PathMap = std::vector<std::pair<std::string, std::string>>;

struct ImageEntry {
  std::string id;
  Dims dims;
  Diagnosis diagnosis = Diagnosis::Benign;
  PathMap ground_truth;  // rater id -> mask or annotation, in manifest rater order
  PathMap methods;       // method id -> mask, in manifest method order

  const std::string* ground_truth_path(std::string_view rater) const noexcept;
  const std::string* method_path(std::string_view method) const noexcept;
};

/// The corpus description. Loaded eagerly and validated structurally; mask
/// files are only opened on access or by validate_files().
struct DatasetManifest {
  std::filesystem::path base_dir;
  std::vector<std::string> raters;
  std::vector<std::string> methods;
  std::vector<ImageEntry> images;

  std::filesystem::path resolve(const std::string& relative) const { return base_dir / relative; }
};

/// JSON document with top-level keys "raters", "methods", "images". Throws
/// ParseError, ValidationError.
DatasetManifest parse_manifest(const std::string& json_text, std::filesystem::path base_dir);
DatasetManifest load_manifest(const std::filesystem::path& path);
std::string dump_manifest(const DatasetManifest& manifest);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

struct RenderOptions {
  int samples_per_segment = kDefaultSamplesPerSegment;
  SplineMode mode = SplineMode::Approximating;
};

/// PGM, PNG, or a border annotation (rendered and filled).
BinaryMask load_mask_file(const std::filesystem::path& path, const RenderOptions& opts);

struct LoadedGroundTruth {
  std::vector<BinaryMask> masks;
  std::vector<std::string> rater_ids;

  GroundTruthSet label_set() const { return GroundTruthSet::from_masks(masks, rater_ids); }
};

/// Loads the entry's manual masks in manifest rater order. When `raters` is
/// non-empty only those raters are loaded. Throws MissingFile,
/// DimensionMismatch, ValidationError (no selected rater for the entry).
LoadedGroundTruth load_ground_truths(const DatasetManifest& manifest, const ImageEntry& entry,
                                     const RenderOptions& opts,
                                     std::span<const std::string> raters = {});

BinaryMask load_method_mask(const DatasetManifest& manifest, const ImageEntry& entry,
                            std::string_view method, const RenderOptions& opts);

struct Diagnostic {
  std::string image_id;  // empty for corpus-wide findings
  std::string message;
};

/// Opens every referenced file and checks it against the entry's dims. With
/// `shared_expected_index`, mixed image dimensions are reported too.
std::vector<Diagnostic> validate_files(const DatasetManifest& manifest, const RenderOptions& opts,
                                       bool shared_expected_index);

}  // namespace segeval

#endif  // SEGEVAL_DATASET_HPP
