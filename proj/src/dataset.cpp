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

#include "segeval/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include <json.hpp>

#include "segeval/error.hpp"
#include "segeval/image_io.hpp"

namespace segeval {

using nlohmann::json;

std::string_view to_string(Diagnosis d) noexcept {
  return d == Diagnosis::Melanoma ? "melanoma" : "benign";
}

std::optional<Diagnosis> parse_diagnosis(std::string_view s) noexcept {
  if (s == "benign") return Diagnosis::Benign;
  if (s == "melanoma") return Diagnosis::Melanoma;
  return std::nullopt;
}

namespace {

const std::string* find_path(const PathMap& map, std::string_view id) noexcept {
  for (const auto& [key, path] : map) {
    if (key == id) return &path;
  }
  return nullptr;
}

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(Errc::ValidationError, where + ": " + what);
}

std::vector<std::string> id_list(const json& doc, const char* key) {
  const std::string where = std::string("manifest.") + key;
  if (!doc.contains(key)) invalid(where, "missing");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) invalid(where, "must be an array of strings");
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& v : arr) {
    if (!v.is_string() || v.get<std::string>().empty()) invalid(where, "ids must be non-empty strings");
    auto id = v.get<std::string>();
    if (!seen.insert(id).second) invalid(where, "duplicate id '" + id + "'");
    ids.push_back(std::move(id));
  }
  return ids;
}

int positive_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) invalid(where + "." + key, "missing");
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > (1 << 24)) {
    invalid(where + "." + key, "must be a positive integer");
  }
  return v.get<int>();
}

// Orders the entries of a JSON object by the manifest's id list, rejecting
// unknown ids.
PathMap ordered_paths(const json& obj, const std::vector<std::string>& known,
                      const std::string& where, const char* kind) {
  if (!obj.is_object()) invalid(where, "must be an object mapping id to path");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      invalid(where, std::string("unknown ") + kind + " '" + key + "'");
    }
    if (!value.is_string() || value.get<std::string>().empty()) {
      invalid(where + "." + key, "path must be a non-empty string");
    }
  }
  PathMap out;
  for (const auto& id : known) {
    if (obj.contains(id)) out.emplace_back(id, obj.at(id).get<std::string>());
  }
  return out;
}

}  // namespace

const std::string* ImageEntry::ground_truth_path(std::string_view rater) const noexcept {
  return find_path(ground_truth, rater);
}

const std::string* ImageEntry::method_path(std::string_view method) const noexcept {
  return find_path(methods, method);
}

DatasetManifest parse_manifest(const std::string& json_text, std::filesystem::path base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) invalid("manifest", "top level must be an object");

  DatasetManifest m;
  m.base_dir = std::move(base_dir);
  m.raters = id_list(doc, "raters");
  m.methods = id_list(doc, "methods");
  if (m.raters.empty()) invalid("manifest.raters", "at least one rater is required");

  if (!doc.contains("images") || !doc.at("images").is_array()) {
    invalid("manifest.images", "must be an array");
  }
  std::set<std::string> seen;
  for (const auto& img : doc.at("images")) {
    if (!img.is_object()) invalid("manifest.images", "entries must be objects");
    if (!img.contains("id") || !img.at("id").is_string() || img.at("id").get<std::string>().empty()) {
      invalid("manifest.images", "entry without a string id");
    }
    ImageEntry e;
    e.id = img.at("id").get<std::string>();
    const std::string where = "image '" + e.id + "'";
    if (!seen.insert(e.id).second) invalid(where, "duplicate image id");
    e.dims = {positive_int(img, "width", where), positive_int(img, "height", where)};

    if (!img.contains("diagnosis") || !img.at("diagnosis").is_string()) {
      invalid(where + ".diagnosis", "missing");
    }
    const auto diag = parse_diagnosis(img.at("diagnosis").get<std::string>());
    if (!diag) invalid(where + ".diagnosis", "must be 'benign' or 'melanoma'");
    e.diagnosis = *diag;

    if (!img.contains("ground_truth")) invalid(where + ".ground_truth", "missing");
    e.ground_truth = ordered_paths(img.at("ground_truth"), m.raters, where + ".ground_truth", "rater");
    if (e.ground_truth.empty()) invalid(where + ".ground_truth", "needs at least one rater");

    if (img.contains("methods")) {
      e.methods = ordered_paths(img.at("methods"), m.methods, where + ".methods", "method");
    }
    m.images.push_back(std::move(e));
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open manifest '" + path.string() + "'");
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_manifest(text, path.parent_path());
}

std::string dump_manifest(const DatasetManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["raters"] = manifest.raters;
  doc["methods"] = manifest.methods;
  doc["images"] = nlohmann::ordered_json::array();
  for (const auto& e : manifest.images) {
    nlohmann::ordered_json img;
    img["id"] = e.id;
    img["width"] = e.dims.width;
    img["height"] = e.dims.height;
    img["diagnosis"] = std::string(to_string(e.diagnosis));
    img["ground_truth"] = nlohmann::ordered_json::object();
    for (const auto& [rater, path] : e.ground_truth) img["ground_truth"][rater] = path;
    img["methods"] = nlohmann::ordered_json::object();
    for (const auto& [method, path] : e.methods) img["methods"][method] = path;
    doc["images"].push_back(std::move(img));
  }
  return doc.dump(2) + "\n";
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MissingFile, "cannot write manifest '" + path.string() + "'");
  out << dump_manifest(manifest);
}

BinaryMask load_mask_file(const std::filesystem::path& path, const RenderOptions& opts) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(Errc::MissingFile, "missing file '" + path.string() + "'");
  }
  if (sniff_format(path) != ImageFormat::Unknown) return read_mask(path);
  return render_border(read_annotation(path), opts.samples_per_segment, opts.mode);
}

namespace {

BinaryMask load_checked(const DatasetManifest& manifest, const ImageEntry& entry,
                        const std::string& relative, const RenderOptions& opts) {
  const auto path = manifest.resolve(relative);
  auto mask = load_mask_file(path, opts);
  if (mask.dims() != entry.dims) {
    throw Error(Errc::DimensionMismatch, "image '" + entry.id + "': '" + path.string() + "' is " +
                                             to_string(mask.dims()) + " but the entry declares " +
                                             to_string(entry.dims));
  }
  return mask;
}

}  // namespace

LoadedGroundTruth load_ground_truths(const DatasetManifest& manifest, const ImageEntry& entry,
                                     const RenderOptions& opts, std::span<const std::string> raters) {
  LoadedGroundTruth out;
  for (const auto& [rater, path] : entry.ground_truth) {
    if (!raters.empty() && std::find(raters.begin(), raters.end(), rater) == raters.end()) continue;
    out.masks.push_back(load_checked(manifest, entry, path, opts));
    out.rater_ids.push_back(rater);
  }
  if (out.masks.empty()) {
    throw Error(Errc::ValidationError, "image '" + entry.id + "' has none of the selected raters");
  }
  return out;
}

BinaryMask load_method_mask(const DatasetManifest& manifest, const ImageEntry& entry,
                            std::string_view method, const RenderOptions& opts) {
  const auto* path = entry.method_path(method);
  if (!path) {
    throw Error(Errc::ValidationError,
                "image '" + entry.id + "' has no mask for method '" + std::string(method) + "'");
  }
  return load_checked(manifest, entry, *path, opts);
}

std::vector<Diagnostic> validate_files(const DatasetManifest& manifest, const RenderOptions& opts,
                                       bool shared_expected_index) {
  std::vector<Diagnostic> out;
  auto check = [&](const ImageEntry& e, const std::string& relative) {
    try {
      load_checked(manifest, e, relative, opts);
    } catch (const Error& err) {
      out.push_back({e.id, err.what()});
    }
  };
  for (const auto& e : manifest.images) {
    for (const auto& [rater, path] : e.ground_truth) check(e, path);
    for (const auto& [method, path] : e.methods) check(e, path);
  }
  if (shared_expected_index && !manifest.images.empty()) {
    std::map<std::string, std::vector<std::string>> by_dims;
    for (const auto& e : manifest.images) by_dims[to_string(e.dims)].push_back(e.id);
    if (by_dims.size() > 1) {
      std::string groups;
      for (const auto& [dims, ids] : by_dims) {
        groups += (groups.empty() ? "" : ", ") + dims + " (" + std::to_string(ids.size()) + " images)";
      }
      out.push_back({"", "images have mixed dimensions: " + groups +
                             "; the shared expected index averages pixel-pair probabilities over "
                             "every image and needs identical dimensions (use "
                             "--expected-policy per-dims)"});
    }
  }
  return out;
}

}  // namespace segeval
