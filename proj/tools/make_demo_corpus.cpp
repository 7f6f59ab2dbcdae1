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

// Writes a synthetic multi-rater corpus with a manifest.

#include <CLI11.hpp>

#include <iostream>

#include "segeval/error.hpp"
#include "segeval/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic lesion corpus", "make_demo_corpus"};
  std::string out;
  segeval::SyntheticCorpusSpec spec;
  spec.dims = {768, 512};
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--width", spec.dims.width, "Image width")->check(CLI::PositiveNumber);
  app.add_option("--height", spec.dims.height, "Image height")->check(CLI::PositiveNumber);
  app.add_option("--benign", spec.benign, "Benign images")->check(CLI::NonNegativeNumber);
  app.add_option("--melanoma", spec.melanoma, "Melanoma images")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", spec.seed, "Random seed");
  CLI11_PARSE(app, argc, argv);
  try {
    std::cout << segeval::write_synthetic_corpus(out, spec).string() << "\n";
  } catch (const segeval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
