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

#include "segeval/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "segeval/error.hpp"

namespace segeval {

namespace {

constexpr std::array<std::pair<Measure, std::string_view>, 10> kMeasureNames{{
    {Measure::Xor, "xor"},
    {Measure::Sensitivity, "sensitivity"},
    {Measure::Specificity, "specificity"},
    {Measure::Precision, "precision"},
    {Measure::Recall, "recall"},
    {Measure::ErrorProbability, "error_probability"},
    {Measure::Guillod, "guillod"},
    {Measure::Pri, "pri"},
    {Measure::ExpectedPri, "expected_pri"},
    {Measure::Npri, "npri"},
}};

}  // namespace

std::string_view to_string(Measure m) noexcept {
  for (const auto& [measure, name] : kMeasureNames) {
    if (measure == m) return name;
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view s) noexcept {
  for (const auto& [measure, name] : kMeasureNames) {
    if (name == s) return measure;
  }
  return std::nullopt;
}

bool is_per_rater(Measure m) noexcept {
  switch (m) {
    case Measure::Xor:
    case Measure::Sensitivity:
    case Measure::Specificity:
    case Measure::Precision:
    case Measure::Recall:
    case Measure::ErrorProbability:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(DiagnosisGroup g) noexcept {
  switch (g) {
    case DiagnosisGroup::Benign: return "Benign";
    case DiagnosisGroup::Melanoma: return "Melanoma";
    case DiagnosisGroup::All: return "All";
  }
  return "All";
}

Orientation orientation_of(Measure m) noexcept {
  switch (m) {
    case Measure::Sensitivity:
    case Measure::Specificity:
    case Measure::Precision:
    case Measure::Recall:
    case Measure::Pri:
    case Measure::ExpectedPri:
    case Measure::Npri:
      return Orientation::HigherIsBetter;
    default:
      return Orientation::LowerIsBetter;
  }
}

namespace {

std::size_t rank_in(const std::vector<std::string>& order, const std::string& id) {
  const auto it = std::find(order.begin(), order.end(), id);
  return static_cast<std::size_t>(it - order.begin());
}

struct GroupKey {
  Measure measure;
  std::size_t rater_rank;
  std::string rater;
  bool has_rater;
  DiagnosisGroup diagnosis;
  std::size_t method_rank;
  std::string method;

  auto tie() const {
    return std::tie(measure, has_rater, rater_rank, rater, diagnosis, method_rank, method);
  }
  bool operator<(const GroupKey& o) const { return tie() < o.tie(); }
};

}  // namespace

std::vector<GroupStat> aggregate(std::span<const MeasureRecord> records, const Grouping& grouping) {
  if (records.empty()) throw Error(Errc::EmptyInput, "no records to aggregate");

  std::map<GroupKey, std::vector<double>> groups;
  for (const auto& r : records) {
    if (!std::isfinite(r.value)) {
      throw Error(Errc::InvalidArgument, "non-finite " + std::string(to_string(r.measure)) +
                                             " value for image '" + r.image_id + "'");
    }
    GroupKey key{r.measure, 0, "", false, DiagnosisGroup::All,
                 rank_in(grouping.method_order, r.method_id), r.method_id};
    if (grouping.per_rater && r.rater_id) {
      key.has_rater = true;
      key.rater = *r.rater_id;
      key.rater_rank = rank_in(grouping.rater_order, *r.rater_id);
    }
    groups[key].push_back(r.value);
    key.diagnosis =
        r.diagnosis == Diagnosis::Melanoma ? DiagnosisGroup::Melanoma : DiagnosisGroup::Benign;
    groups[key].push_back(r.value);
  }

  std::vector<GroupStat> out;
  out.reserve(groups.size());
  for (auto& [key, values] : groups) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    double sd = 0.0;
    if (values.size() > 1) {
      sd = std::sqrt(sq / (grouping.stddev == StddevMode::Sample ? n - 1.0 : n));
    }
    GroupStat s;
    s.measure = key.measure;
    s.method_id = key.method;
    if (key.has_rater) s.rater_id = key.rater;
    s.diagnosis = key.diagnosis;
    s.mean = mean;
    s.stddev = sd;
    s.n = values.size();
    out.push_back(std::move(s));
  }
  // The map orders Benign < Melanoma < All within each (measure, rater) and
  // puts methods innermost, which is the table order.
  return out;
}

std::string format_cell(double mean, double stddev) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.3f (%.3f)", mean, stddev);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

struct TableShape {
  std::vector<RowKey> rows;
  std::vector<std::string> methods;
  std::map<std::pair<RowKey, std::string>, const GroupStat*> cells;
};

TableShape shape_of(std::span<const GroupStat> stats, std::optional<TableLayout> layout) {
  if (stats.empty()) throw Error(Errc::LayoutMismatch, "no statistics to tabulate");
  TableShape t;
  const Measure measure = stats.front().measure;
  for (const auto& s : stats) {
    if (s.measure != measure) {
      throw Error(Errc::LayoutMismatch, "a table holds one measure, got " +
                                            std::string(to_string(measure)) + " and " +
                                            std::string(to_string(s.measure)));
    }
    if (layout == TableLayout::PerRater && !s.rater_id) {
      throw Error(Errc::LayoutMismatch, "per-rater layout needs a rater on every statistic");
    }
    if (layout == TableLayout::Pooled && s.rater_id) {
      throw Error(Errc::LayoutMismatch, "pooled layout cannot hold per-rater statistics");
    }
    RowKey row{s.rater_id, s.diagnosis};
    if (std::find(t.rows.begin(), t.rows.end(), row) == t.rows.end()) t.rows.push_back(row);
    if (std::find(t.methods.begin(), t.methods.end(), s.method_id) == t.methods.end()) {
      t.methods.push_back(s.method_id);
    }
    if (!t.cells.emplace(std::make_pair(row, s.method_id), &s).second) {
      throw Error(Errc::LayoutMismatch, "duplicate statistic for method '" + s.method_id + "'");
    }
  }
  return t;
}

}  // namespace

std::string emit_table(std::span<const GroupStat> stats, TableLayout layout) {
  const auto t = shape_of(stats, layout);
  std::string out = layout == TableLayout::PerRater ? "Rater,Diagnosis" : "Diagnosis";
  for (const auto& m : t.methods) out += "," + csv_escape(m);
  out += "\n";
  for (const auto& row : t.rows) {
    if (layout == TableLayout::PerRater) out += csv_escape(*row.rater_id) + ",";
    out += std::string(to_string(row.diagnosis));
    for (const auto& m : t.methods) {
      out += ",";
      const auto it = t.cells.find({row, m});
      if (it != t.cells.end()) out += format_cell(it->second->mean, it->second->stddev);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

std::string render_aligned(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  std::vector<std::size_t> widths;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
    const auto& r = rows.back();
    if (widths.size() < r.size()) widths.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
  }
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string text;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (c) text += "  ";
      text += rows[i][c] + std::string(widths[c] - rows[i][c].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
    if (i == 0) {
      std::size_t total = 0;
      for (auto w : widths) total += w;
      out += std::string(total + 2 * (widths.size() - 1), '-') + "\n";
    }
  }
  return out;
}

std::map<RowKey, std::vector<std::string>> best_per_row(std::span<const GroupStat> stats,
                                                        Orientation orientation) {
  std::map<RowKey, std::vector<std::string>> best;
  if (stats.empty()) return best;
  const auto t = shape_of(stats, std::nullopt);
  for (const auto& row : t.rows) {
    std::optional<double> winner;
    std::vector<std::string> ids;
    for (const auto& m : t.methods) {
      const auto it = t.cells.find({row, m});
      if (it == t.cells.end()) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f", it->second->mean);
      const double shown = std::strtod(buf, nullptr);
      const bool better = !winner || (orientation == Orientation::LowerIsBetter ? shown < *winner
                                                                                : shown > *winner);
      if (better) {
        winner = shown;
        ids = {m};
      } else if (shown == *winner) {
        ids.push_back(m);
      }
    }
    if (!ids.empty()) best.emplace(row, std::move(ids));
  }
  return best;
}

std::string emit_records(std::span<const MeasureRecord> records) {
  std::string out = "image_id,diagnosis,method,rater,measure,value\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.6f", r.value);
    out += csv_escape(r.image_id) + "," + std::string(to_string(r.diagnosis)) + "," +
           csv_escape(r.method_id) + "," + (r.rater_id ? csv_escape(*r.rater_id) : "") + "," +
           std::string(to_string(r.measure)) + "," + buf + "\n";
  }
  return out;
}

}  // namespace segeval
