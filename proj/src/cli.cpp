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

#include "segeval/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "segeval/confusion.hpp"
#include "segeval/error.hpp"
#include "segeval/image_io.hpp"
#include "segeval/prob_border.hpp"
#include "segeval/rand_index.hpp"

namespace segeval::cli {

namespace {

const std::vector<std::string> kDefaultMeasures = {
    "xor", "sensitivity", "specificity", "precision", "recall", "error_probability", "guillod"};

// Flag values that do not fit the manifest.
struct ConfigError {
  std::string message;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::ParseError:
    case Errc::ValidationError:
    case Errc::MissingFile:
    case Errc::DimensionMismatch:
    case Errc::TooFewControlPoints:
    case Errc::InvalidArgument:
      return kExitInvalid;
    default:
      return kExitCompute;
  }
}

void apply_jobs(int jobs) {
  if (jobs <= 0) {
    if (const char* env = std::getenv("SEGEVAL_JOBS")) jobs = std::atoi(env);
  }
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#endif
}

std::vector<std::string> select_ids(const std::vector<std::string>& requested,
                                    const std::vector<std::string>& known, const char* kind) {
  if (requested.empty()) return known;
  for (const auto& id : requested) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw ConfigError{std::string("unknown ") + kind + " id '" + id + "'"};
    }
  }
  // Keep manifest order regardless of flag order.
  std::vector<std::string> out;
  for (const auto& id : known) {
    if (std::find(requested.begin(), requested.end(), id) != requested.end()) out.push_back(id);
  }
  return out;
}

std::vector<Measure> select_measures(const std::vector<std::string>& names,
                                     const std::vector<std::string>& defaults) {
  std::vector<Measure> out;
  for (const auto& name : names.empty() ? defaults : names) {
    const auto m = parse_measure(name);
    if (!m) throw ConfigError{"unknown measure '" + name + "'"};
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::MissingFile, "cannot write '" + path.string() + "'");
  f << text;
}

class Output {
 public:
  Output(const RunConfig& config, std::ostream& out) : config_(config), out_(out) {
    if (config_.out) std::filesystem::create_directories(*config_.out);
  }

  void table(const std::string& name, const std::string& csv) {
    if (config_.out) {
      write_text(*config_.out / (name + ".csv"), csv);
      out_ << "wrote " << (*config_.out / (name + ".csv")).string() << "\n";
    } else {
      out_ << "# " << name << "\n"
           << (config_.format == OutputFormat::Text ? render_aligned(csv) : csv) << "\n";
    }
  }

 private:
  const RunConfig& config_;
  std::ostream& out_;
};

std::string best_csv(std::span<const GroupStat> stats, Orientation orientation,
                     TableLayout layout) {
  const bool per_rater = layout == TableLayout::PerRater;
  std::string out = per_rater ? "Rater,Diagnosis,Best\n" : "Diagnosis,Best\n";
  for (const auto& [row, ids] : best_per_row(stats, orientation)) {
    std::string joined;
    for (const auto& id : ids) joined += (joined.empty() ? "" : " ") + id;
    if (per_rater) out += csv_escape(*row.rater_id) + ",";
    out += std::string(to_string(row.diagnosis)) + "," + csv_escape(joined) + "\n";
  }
  return out;
}

void emit_tables(Output& output, std::span<const MeasureRecord> records,
                 const std::vector<Measure>& measures, const Grouping& grouping) {
  const auto stats = aggregate(records, grouping);
  for (auto m : measures) {
    std::vector<GroupStat> of_measure;
    for (const auto& s : stats) {
      if (s.measure == m) of_measure.push_back(s);
    }
    if (of_measure.empty()) continue;
    const auto layout = of_measure.front().rater_id ? TableLayout::PerRater : TableLayout::Pooled;
    const std::string name(to_string(m));
    output.table(name, emit_table(of_measure, layout));
    output.table(name + "_best", best_csv(of_measure, orientation_of(m), layout));
  }
}

double per_rater_value(Measure m, const ConfusionCounts& c) {
  switch (m) {
    case Measure::Xor: return xor_error(c);
    case Measure::Sensitivity: return sensitivity(c);
    case Measure::Specificity: return specificity(c);
    case Measure::Precision: return precision(c);
    case Measure::Recall: return recall(c);
    case Measure::ErrorProbability: return error_probability(c);
    default: break;
  }
  throw Error(Errc::InvalidArgument, "not a per-rater measure");
}

struct ImageFailure {
  std::string message;
  int code;
};

void report_failures(const std::vector<std::optional<ImageFailure>>& failures, std::ostream& err,
                     int& exit_code) {
  for (const auto& f : failures) {
    if (!f) continue;
    err << "error: " << f->message << "\n";
    exit_code = std::max(exit_code, f->code);
  }
}

}  // namespace

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  DatasetManifest manifest;
  try {
    manifest = load_manifest(config.manifest);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  const auto diags = validate_files(manifest, config.render,
                                    config.expected_policy == ExpectedPolicy::Shared);
  for (const auto& d : diags) {
    err << (d.image_id.empty() ? std::string("corpus") : "image '" + d.image_id + "'") << ": "
        << d.message << "\n";
  }
  out << manifest.images.size() << " images, " << manifest.raters.size() << " raters, "
      << manifest.methods.size() << " methods: " << (diags.empty() ? "ok" : "problems found")
      << "\n";
  return diags.empty() ? kExitOk : kExitInvalid;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  apply_jobs(config.jobs);
  DatasetManifest manifest;
  std::vector<std::string> methods;
  std::vector<std::string> raters;
  std::vector<Measure> measures;
  try {
    manifest = load_manifest(config.manifest);
    methods = select_ids(config.methods, manifest.methods, "method");
    raters = select_ids(config.raters, manifest.raters, "rater");
    measures = select_measures(config.measures, kDefaultMeasures);
    for (auto m : measures) {
      if (!is_per_rater(m) && m != Measure::Guillod) {
        throw ConfigError{"measure '" + std::string(to_string(m)) +
                          "' is computed by the npri subcommand"};
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConfigError& e) {
    err << "error: " << e.message << "\n";
    return kExitInvalid;
  }

  const std::size_t count = manifest.images.size();
  std::vector<std::vector<MeasureRecord>> per_image(count);
  std::vector<std::optional<ImageFailure>> failures(count);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(count); ++idx) {
    const auto& entry = manifest.images[static_cast<std::size_t>(idx)];
    auto& records = per_image[static_cast<std::size_t>(idx)];
    std::string context = "image '" + entry.id + "'";
    try {
      const auto gts = load_ground_truths(manifest, entry, config.render, raters);
      for (const auto& method : methods) {
        if (!entry.method_path(method)) continue;
        context = "image '" + entry.id + "', method '" + method + "'";
        const auto automatic = load_method_mask(manifest, entry, method, config.render);
        for (std::size_t k = 0; k < gts.masks.size(); ++k) {
          const auto counts = confusion(gts.masks[k], automatic);
          for (auto m : measures) {
            if (!is_per_rater(m)) continue;
            context = "image '" + entry.id + "', method '" + method + "', rater '" +
                      gts.rater_ids[k] + "', " + std::string(to_string(m));
            records.push_back({entry.id, method, gts.rater_ids[k], entry.diagnosis, m,
                               per_rater_value(m, counts)});
          }
        }
        if (std::find(measures.begin(), measures.end(), Measure::Guillod) != measures.end()) {
          context = "image '" + entry.id + "', method '" + method + "', guillod";
          std::vector<BinaryMask> observations = gts.masks;
          if (config.guillod_include_test) observations.push_back(automatic);
          const auto prob = build_probability_image(observations);
          records.push_back({entry.id, method, std::nullopt, entry.diagnosis, Measure::Guillod,
                             guillod_error(prob, automatic)});
        }
      }
    } catch (const Error& e) {
      failures[static_cast<std::size_t>(idx)] = ImageFailure{context + ": " + e.what(), exit_code_for(e)};
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(idx)] = ImageFailure{context + ": " + e.what(), kExitCompute};
    }
  }

  int exit_code = kExitOk;
  report_failures(failures, err, exit_code);
  if (exit_code != kExitOk) return exit_code;

  // Image, then method, rater and measure in manifest order.
  std::vector<MeasureRecord> records;
  for (auto& r : per_image) {
    std::stable_sort(r.begin(), r.end(), [&](const MeasureRecord& a, const MeasureRecord& b) {
      const auto ma = std::find(methods.begin(), methods.end(), a.method_id) - methods.begin();
      const auto mb = std::find(methods.begin(), methods.end(), b.method_id) - methods.begin();
      if (ma != mb) return ma < mb;
      if (a.measure != b.measure) return a.measure < b.measure;
      const auto ra = a.rater_id ? std::find(raters.begin(), raters.end(), *a.rater_id) - raters.begin() : -1;
      const auto rb = b.rater_id ? std::find(raters.begin(), raters.end(), *b.rater_id) - raters.begin() : -1;
      return ra < rb;
    });
    records.insert(records.end(), r.begin(), r.end());
  }
  if (records.empty()) {
    err << "error: no (image, method) pairs to evaluate\n";
    return kExitInvalid;
  }

  try {
    Output output(config, out);
    Grouping grouping{true, config.stddev, raters, methods};
    emit_tables(output, records, measures, grouping);
    output.table("evaluate_detail", emit_records(records));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}

int cmd_npri(const RunConfig& config, std::ostream& out, std::ostream& err) {
  apply_jobs(config.jobs);
  DatasetManifest manifest;
  std::vector<std::string> methods;
  std::vector<std::string> raters;
  try {
    manifest = load_manifest(config.manifest);
    methods = select_ids(config.methods, manifest.methods, "method");
    raters = select_ids(config.raters, manifest.raters, "rater");
    if (manifest.images.empty()) throw Error(Errc::EmptyDataset, "manifest has no images");
    if (config.expected_policy == ExpectedPolicy::Shared) {
      for (const auto& e : manifest.images) {
        if (e.dims != manifest.images.front().dims) {
          throw ConfigError{"image '" + e.id + "' is " + to_string(e.dims) + " but image '" +
                            manifest.images.front().id + "' is " +
                            to_string(manifest.images.front().dims) +
                            "; the shared expected index averages pixel-pair probabilities over "
                            "every image and needs identical dimensions (use "
                            "--expected-policy per-dims)"};
        }
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const ConfigError& e) {
    err << "error: " << e.message << "\n";
    return kExitInvalid;
  }

  const std::size_t count = manifest.images.size();
  std::vector<std::optional<GroundTruthSet>> gts(count);
  std::vector<std::optional<ImageFailure>> failures(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(count); ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    try {
      gts[i].emplace(load_ground_truths(manifest, manifest.images[i], config.render, raters).label_set());
    } catch (const Error& e) {
      failures[i] = ImageFailure{"image '" + manifest.images[i].id + "': " + e.what(), exit_code_for(e)};
    } catch (const std::exception& e) {
      failures[i] = ImageFailure{"image '" + manifest.images[i].id + "': " + e.what(), kExitCompute};
    }
  }
  int exit_code = kExitOk;
  report_failures(failures, err, exit_code);
  if (exit_code != kExitOk) return exit_code;

  // One pair model per dimension group (a single group under the shared policy).
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < count; ++i) groups[to_string(manifest.images[i].dims)].push_back(i);
  std::map<std::string, DatasetPairModel> models;
  for (const auto& [key, members] : groups) {
    std::vector<GroundTruthSet> sets;
    for (auto i : members) sets.push_back(*gts[i]);
    models.emplace(key, DatasetPairModel::build(sets));
  }

  struct Detail {
    std::string method;
    PriResult result;
    bool degenerate = false;
  };
  std::vector<std::vector<Detail>> details(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(count); ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    const auto& entry = manifest.images[i];
    std::string context = "image '" + entry.id + "'";
    try {
      const auto& model = models.at(to_string(entry.dims));
      const double expected = expected_rand_index(entry.dims, *gts[i], model);
      for (const auto& method : methods) {
        if (!entry.method_path(method)) continue;
        context = "image '" + entry.id + "', method '" + method + "'";
        const auto test = to_label_map(load_method_mask(manifest, entry, method, config.render));
        Detail d{method, {}, false};
        d.result.pri = probabilistic_rand_index(test, *gts[i]);
        d.result.expected = expected;
        d.result.pair_count = pair_count(test.size());
        try {
          d.result.npri = normalize_rand_index(d.result.pri, expected);
        } catch (const Error& e) {
          if (e.code() != Errc::DegenerateNormalization) throw;
          d.degenerate = true;
        }
        details[i].push_back(d);
      }
    } catch (const Error& e) {
      failures[i] = ImageFailure{context + ": " + e.what(), exit_code_for(e)};
    } catch (const std::exception& e) {
      failures[i] = ImageFailure{context + ": " + e.what(), kExitCompute};
    }
  }
  report_failures(failures, err, exit_code);
  if (exit_code != kExitOk) return exit_code;

  std::string detail_csv = "image_id,diagnosis,method,dims_group,pri,expected_pri,npri,status\n";
  std::vector<MeasureRecord> records;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& entry = manifest.images[i];
    for (const auto& d : details[i]) {
      detail_csv += csv_escape(entry.id) + "," + std::string(to_string(entry.diagnosis)) + "," +
                    csv_escape(d.method) + "," + to_string(entry.dims) + "," +
                    number(d.result.pri, 9) + "," + number(d.result.expected, 9) + "," +
                    (d.degenerate ? "" : number(d.result.npri, 9)) + "," +
                    (d.degenerate ? "degenerate" : "ok") + "\n";
      if (d.degenerate) {
        err << "error: image '" << entry.id << "', method '" << d.method
            << "': DegenerateNormalization: expected index is 1, normalized index undefined\n";
        exit_code = kExitCompute;
        continue;
      }
      records.push_back({entry.id, d.method, std::nullopt, entry.diagnosis, Measure::Npri,
                         d.result.npri});
    }
  }

  try {
    Output output(config, out);
    if (!records.empty()) {
      Grouping grouping{false, config.stddev, raters, methods};
      emit_tables(output, records, {Measure::Npri}, grouping);
    }
    output.table("npri_detail", detail_csv);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return exit_code;
}

int cmd_render(const std::filesystem::path& annotation, const std::filesystem::path& output,
               const RenderOptions& render, std::ostream& err) {
  try {
    const auto ann = read_annotation(annotation);
    write_mask_pgm(output, render_border(ann, render.samples_per_segment, render.mode));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-rater evaluation of binary lesion segmentations", "segeval"};
  app.require_subcommand(1);

  RunConfig config;
  std::string stddev = "sample";
  std::string policy = "shared";
  std::string format = "csv";
  std::string out_dir;
  bool interpolate = false;

  auto add_corpus_flags = [&](CLI::App* sub) {
    sub->add_option("--manifest", config.manifest, "Corpus manifest (JSON)")->required();
    sub->add_option("--methods", config.methods, "Methods to evaluate (default: all)")->delimiter(',');
    sub->add_option("--raters", config.raters, "Raters to use (default: all)")->delimiter(',');
    sub->add_option("--spline-samples", config.render.samples_per_segment,
                    "Samples per B-spline segment when rendering annotations")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--interpolate", interpolate,
                  "Annotation clicks lie on the curve (default: they are control points)");
    sub->add_option("--expected-policy", policy, "Expected-index grouping: shared | per-dims")
        ->check(CLI::IsMember({"shared", "per-dims"}));
  };
  auto add_output_flags = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Output directory (default: standard output)");
    sub->add_option("--stddev", stddev, "sample | population")
        ->check(CLI::IsMember({"sample", "population"}));
    sub->add_option("--format", format, "Standard-output rendering: csv | text")
        ->check(CLI::IsMember({"csv", "text"}));
    sub->add_option("--jobs", config.jobs, "Worker threads (fallback: SEGEVAL_JOBS)")
        ->check(CLI::NonNegativeNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check the manifest and every referenced file");
  add_corpus_flags(validate);

  auto* evaluate = app.add_subcommand("evaluate", "Per-rater measures and Guillod error tables");
  add_corpus_flags(evaluate);
  add_output_flags(evaluate);
  evaluate->add_option("--measures", config.measures, "Measures (default: all per-rater + guillod)")
      ->delimiter(',');
  evaluate->add_flag("--guillod-include-test", config.guillod_include_test,
                     "Count the automatic border as one of the N observations");

  auto* npri = app.add_subcommand("npri", "Normalized probabilistic Rand index table");
  add_corpus_flags(npri);
  add_output_flags(npri);

  std::string annotation;
  std::string render_out;
  auto* render = app.add_subcommand("render-border", "Rasterize a border annotation to PGM");
  render->add_option("--annotation", annotation, "Annotation text file")->required();
  render->add_option("--out", render_out, "Output PGM path")->required();
  render->add_option("--spline-samples", config.render.samples_per_segment,
                     "Samples per B-spline segment")
      ->check(CLI::PositiveNumber);
  render->add_flag("--interpolate", interpolate, "Clicks lie on the curve");

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out;
    std::ostringstream msg_err;
    const int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    err << msg_err.str();
    return code == 0 ? kExitOk : kExitInvalid;
  }

  config.render.mode = interpolate ? SplineMode::Interpolating : SplineMode::Approximating;
  config.stddev = stddev == "population" ? StddevMode::Population : StddevMode::Sample;
  config.expected_policy = policy == "per-dims" ? ExpectedPolicy::PerDims : ExpectedPolicy::Shared;
  config.format = format == "text" ? OutputFormat::Text : OutputFormat::Csv;
  if (!out_dir.empty()) config.out = out_dir;

  try {
    if (*validate) return cmd_validate(config, out, err);
    if (*evaluate) return cmd_evaluate(config, out, err);
    if (*npri) return cmd_npri(config, out, err);
    return cmd_render(annotation, render_out, config.render, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCompute;
  }
}

}  // namespace segeval::cli
