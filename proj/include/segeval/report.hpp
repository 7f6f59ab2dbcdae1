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

#ifndef SEGEVAL_REPORT_HPP
#define SEGEVAL_REPORT_HPP

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "segeval/dataset.hpp"

namespace segeval {

enum class Measure {
  Xor,
  Sensitivity,
  Specificity,
  Precision,
  Recall,
  ErrorProbability,
  Guillod,
  Pri,
  ExpectedPri,
  Npri,
};

std::string_view to_string(Measure m) noexcept;
std::optional<Measure> parse_measure(std::string_view s) noexcept;
/// Measures defined against a single manual border.
bool is_per_rater(Measure m) noexcept;

enum class DiagnosisGroup { Benign, Melanoma, All };
std::string_view to_string(DiagnosisGroup g) noexcept;  // "Benign", "Melanoma", "All"

struct MeasureRecord {
  std::string image_id;
  std::string method_id;
  std::optional<std::string> rater_id;  // absent for multi-rater measures
  Diagnosis diagnosis = Diagnosis::Benign;
  Measure measure = Measure::Xor;
  double value = 0.0;
};

enum class StddevMode { Sample, Population };

/// Row/column ordering for aggregated output. Ids missing from an order list
/// sort after the listed ones, lexicographically.
struct Grouping {
  bool per_rater = true;
  StddevMode stddev = StddevMode::Sample;
  std::vector<std::string> rater_order;
  std::vector<std::string> method_order;
};

struct GroupStat {
  Measure measure = Measure::Xor;
  std::string method_id;
  std::optional<std::string> rater_id;
  DiagnosisGroup diagnosis = DiagnosisGroup::All;
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t n = 0;
};

/// Mean and standard deviation per (measure, rater?, diagnosis, method).
/// The All group is the union of both diagnoses; diagnosis groups without
/// records are omitted. Values are summed in sorted order, so the result does
/// not depend on record order. Throws EmptyInput, InvalidArgument (non-finite
/// value).
std::vector<GroupStat> aggregate(std::span<const MeasureRecord> records, const Grouping& grouping);

enum class TableLayout { PerRater, Pooled };

/// `mean (stddev)` with three decimals.
std::string format_cell(double mean, double stddev);

/// One row per (rater?, diagnosis) and one column per method, rows and
/// columns in the order they appear in `stats`. Throws LayoutMismatch when
/// `stats` is empty, mixes measures, or disagrees with the layout.
std::string emit_table(std::span<const GroupStat> stats, TableLayout layout);

/// Same content as emit_table, padded into aligned columns for terminals.
std::string render_aligned(const std::string& csv);

struct RowKey {
  std::optional<std::string> rater_id;
  DiagnosisGroup diagnosis = DiagnosisGroup::All;
  friend auto operator<=>(const RowKey&, const RowKey&) = default;
};

enum class Orientation { LowerIsBetter, HigherIsBetter };
Orientation orientation_of(Measure m) noexcept;

/// Winning method(s) per row, compared at the printed three-decimal
/// precision so that ties in the table are ties here.
std::map<RowKey, std::vector<std::string>> best_per_row(std::span<const GroupStat> stats,
                                                        Orientation orientation);

std::string csv_escape(const std::string& field);

/// image_id,diagnosis,method,rater,measure,value in the given order.
std::string emit_records(std::span<const MeasureRecord> records);

}  // namespace segeval

#endif  // SEGEVAL_REPORT_HPP
