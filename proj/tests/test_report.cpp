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

#include <doctest.h>

#include <cmath>

#include "segeval/error.hpp"
#include "segeval/report.hpp"
#include "support.hpp"

using namespace segeval;

namespace {

MeasureRecord rec(std::string image, std::string method, std::optional<std::string> rater,
                  Diagnosis d, Measure m, double v) {
  return {std::move(image), std::move(method), std::move(rater), d, m, v};
}

const GroupStat* find(const std::vector<GroupStat>& stats, const std::string& method,
                      std::optional<std::string> rater, DiagnosisGroup g) {
  for (const auto& s : stats) {
    if (s.method_id == method && s.rater_id == rater && s.diagnosis == g) return &s;
  }
  return nullptr;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("measure names round trip") {
  for (auto m : {Measure::Xor, Measure::Sensitivity, Measure::Specificity, Measure::Precision,
                 Measure::Recall, Measure::ErrorProbability, Measure::Guillod, Measure::Pri,
                 Measure::ExpectedPri, Measure::Npri}) {
    CHECK(parse_measure(to_string(m)) == m);
  }
  CHECK(!parse_measure("dice"));
  CHECK(is_per_rater(Measure::Xor));
  CHECK(!is_per_rater(Measure::Npri));
  CHECK(orientation_of(Measure::Xor) == Orientation::LowerIsBetter);
  CHECK(orientation_of(Measure::Npri) == Orientation::HigherIsBetter);
}

TEST_CASE("mean and sample standard deviation") {
  const std::vector<MeasureRecord> r{
      rec("a", "M", "R", Diagnosis::Benign, Measure::Xor, 10.0),
      rec("b", "M", "R", Diagnosis::Benign, Measure::Xor, 12.0),
  };
  const auto stats = aggregate(r, Grouping{});
  const auto* s = find(stats, "M", "R", DiagnosisGroup::Benign);
  REQUIRE(s);
  CHECK(s->mean == 11.0);
  CHECK(s->stddev == doctest::Approx(std::sqrt(2.0)));
  CHECK(s->n == 2);
  CHECK(!find(stats, "M", "R", DiagnosisGroup::Melanoma));

  Grouping pop;
  pop.stddev = StddevMode::Population;
  CHECK(find(aggregate(r, pop), "M", "R", DiagnosisGroup::Benign)->stddev == 1.0);
}

TEST_CASE("single value has zero deviation") {
  const std::vector<MeasureRecord> r{rec("a", "M", "R", Diagnosis::Melanoma, Measure::Xor, 7.5)};
  const auto stats = aggregate(r, Grouping{});
  CHECK(find(stats, "M", "R", DiagnosisGroup::Melanoma)->stddev == 0.0);
  CHECK(find(stats, "M", "R", DiagnosisGroup::All)->stddev == 0.0);
}

TEST_CASE("all group is the union of both diagnoses") {
  std::mt19937_64 rng(53);
  std::vector<MeasureRecord> r;
  std::vector<double> all;
  for (int i = 0; i < 20; ++i) {
    const double v = testing::uniform_real(rng, 0.0, 100.0);
    r.push_back(rec("i" + std::to_string(i), "M", "R",
                    i % 3 == 0 ? Diagnosis::Melanoma : Diagnosis::Benign, Measure::Xor, v));
    all.push_back(v);
  }
  const auto stats = aggregate(r, Grouping{});
  const auto* s = find(stats, "M", "R", DiagnosisGroup::All);
  REQUIRE(s);
  CHECK(s->n == 20);
  double mean = 0.0;
  for (double v : all) mean += v;
  mean /= 20.0;
  CHECK(s->mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(find(stats, "M", "R", DiagnosisGroup::Benign)->n +
            find(stats, "M", "R", DiagnosisGroup::Melanoma)->n ==
        20);

  auto shuffled = r;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const auto again = aggregate(shuffled, Grouping{});
  REQUIRE(again.size() == stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    CHECK(again[i].mean == stats[i].mean);
    CHECK(again[i].stddev == stats[i].stddev);
  }
}

TEST_CASE("aggregate errors") {
  CHECK(code_of([] { aggregate({}, Grouping{}); }) == Errc::EmptyInput);
  const std::vector<MeasureRecord> r{rec("a", "M", "R", Diagnosis::Benign, Measure::Xor, NAN)};
  CHECK(code_of([&] { aggregate(r, Grouping{}); }) == Errc::InvalidArgument);
}

TEST_CASE("per-rater table shape") {
  std::vector<MeasureRecord> r;
  for (const char* rater : {"R2", "R1"}) {
    for (const char* method : {"M2", "M1"}) {
      r.push_back(rec("b", method, rater, Diagnosis::Benign, Measure::Xor, 10.0));
      r.push_back(rec("m", method, rater, Diagnosis::Melanoma, Measure::Xor, 20.0));
    }
  }
  Grouping g;
  g.rater_order = {"R1", "R2"};
  g.method_order = {"M1", "M2"};
  const auto table = emit_table(aggregate(r, g), TableLayout::PerRater);
  CHECK(table ==
        "Rater,Diagnosis,M1,M2\n"
        "R1,Benign,10.000 (0.000),10.000 (0.000)\n"
        "R1,Melanoma,20.000 (0.000),20.000 (0.000)\n"
        "R1,All,15.000 (7.071),15.000 (7.071)\n"
        "R2,Benign,10.000 (0.000),10.000 (0.000)\n"
        "R2,Melanoma,20.000 (0.000),20.000 (0.000)\n"
        "R2,All,15.000 (7.071),15.000 (7.071)\n");
}

TEST_CASE("pooled table shape") {
  std::vector<MeasureRecord> r{
      rec("b1", "M1", std::nullopt, Diagnosis::Benign, Measure::Npri, 0.5),
      rec("b2", "M1", std::nullopt, Diagnosis::Benign, Measure::Npri, 0.7),
      rec("b1", "M2", std::nullopt, Diagnosis::Benign, Measure::Npri, 0.25),
  };
  const auto table = emit_table(aggregate(r, Grouping{}), TableLayout::Pooled);
  CHECK(table ==
        "Diagnosis,M1,M2\n"
        "Benign,0.600 (0.141),0.250 (0.000)\n"
        "All,0.600 (0.141),0.250 (0.000)\n");
  const auto aligned = render_aligned(table);
  CHECK(aligned.find("Diagnosis  M1") == 0);
  CHECK(aligned.find("---") != std::string::npos);
}

TEST_CASE("table layout mismatches") {
  CHECK(code_of([] { emit_table({}, TableLayout::Pooled); }) == Errc::LayoutMismatch);
  const std::vector<MeasureRecord> per{rec("a", "M", "R", Diagnosis::Benign, Measure::Xor, 1.0)};
  CHECK(code_of([&] { emit_table(aggregate(per, Grouping{}), TableLayout::Pooled); }) ==
        Errc::LayoutMismatch);
  const std::vector<MeasureRecord> pooled{
      rec("a", "M", std::nullopt, Diagnosis::Benign, Measure::Npri, 1.0)};
  CHECK(code_of([&] { emit_table(aggregate(pooled, Grouping{}), TableLayout::PerRater); }) ==
        Errc::LayoutMismatch);
  std::vector<MeasureRecord> mixed = per;
  mixed.push_back(rec("a", "M", "R", Diagnosis::Benign, Measure::Precision, 1.0));
  CHECK(code_of([&] { emit_table(aggregate(mixed, Grouping{}), TableLayout::PerRater); }) ==
        Errc::LayoutMismatch);
}

TEST_CASE("cell format") {
  CHECK(format_cell(11.0, std::sqrt(2.0)) == "11.000 (1.414)");
  CHECK(format_cell(-0.4, 0.0) == "-0.400 (0.000)");
}

TEST_CASE("best per row respects orientation and ties") {
  std::vector<GroupStat> s(3);
  for (auto& g : s) {
    g.measure = Measure::Xor;
    g.diagnosis = DiagnosisGroup::All;
  }
  s[0].method_id = "A";
  s[0].mean = 10.0001;
  s[1].method_id = "B";
  s[1].mean = 10.0004;
  s[2].method_id = "C";
  s[2].mean = 12.0;
  const auto low = best_per_row(s, Orientation::LowerIsBetter);
  CHECK(low.at(RowKey{std::nullopt, DiagnosisGroup::All}) == std::vector<std::string>{"A", "B"});
  const auto high = best_per_row(s, Orientation::HigherIsBetter);
  CHECK(high.at(RowKey{std::nullopt, DiagnosisGroup::All}) == std::vector<std::string>{"C"});
}

TEST_CASE("record dump") {
  const std::vector<MeasureRecord> r{
      rec("a,1", "M", "R", Diagnosis::Melanoma, Measure::Xor, 1.5),
      rec("b", "M", std::nullopt, Diagnosis::Benign, Measure::Guillod, 2.0),
  };
  CHECK(emit_records(r) ==
        "image_id,diagnosis,method,rater,measure,value\n"
        "\"a,1\",melanoma,M,R,xor,1.500000\n"
        "b,benign,M,,guillod,2.000000\n");
  CHECK(csv_escape("a\"b") == "\"a\"\"b\"");
}
