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

#ifndef SEGEVAL_CLI_HPP
#define SEGEVAL_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "segeval/dataset.hpp"
#include "segeval/report.hpp"

namespace segeval::cli {

// Process exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;  // validation or configuration error
constexpr int kExitCompute = 2;  // a measure could not be computed

enum class ExpectedPolicy { Shared, PerDims };
enum class OutputFormat { Csv, Text };

struct RunConfig {
  std::filesystem::path manifest;
  std::vector<std::string> measures;  // names from the measure catalogue
  std::vector<std::string> methods;   // empty = all
  std::vector<std::string> raters;    // empty = all
  bool guillod_include_test = false;
  RenderOptions render;
  std::optional<std::filesystem::path> out;  // output directory; stdout when absent
  StddevMode stddev = StddevMode::Sample;
  ExpectedPolicy expected_policy = ExpectedPolicy::Shared;
  OutputFormat format = OutputFormat::Csv;
  int jobs = 0;  // 0 = SEGEVAL_JOBS or the OpenMP default
};

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_npri(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_render(const std::filesystem::path& annotation, const std::filesystem::path& output,
               const RenderOptions& render, std::ostream& err);

/// Parses argv (program name first) and dispatches to a subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segeval::cli

#endif  // SEGEVAL_CLI_HPP
