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

// Parallel kernels against their serial reference implementations.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "segeval/bspline.hpp"
#include "segeval/confusion.hpp"
#include "segeval/prob_border.hpp"
#include "segeval/rand_index.hpp"
#include "segeval/reference.hpp"
#include "support.hpp"

using namespace segeval;

namespace {

constexpr int kW = 768;
constexpr int kH = 512;

BinaryMask blob(std::mt19937_64& rng, int w, int h) {
  return testing::disk_mask(w, h, testing::uniform_real(rng, 0.4, 0.6) * w,
                            testing::uniform_real(rng, 0.4, 0.6) * h,
                            testing::uniform_real(rng, 0.15, 0.3) * h);
}

GroundTruthSet blob_gts(std::mt19937_64& rng, int w, int h) {
  return GroundTruthSet::from_masks({blob(rng, w, h), blob(rng, w, h), blob(rng, w, h)},
                                    {"a", "b", "c"});
}

void BM_Confusion(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = blob(rng, kW, kH);
  const auto b = blob(rng, kW, kH);
  for (auto _ : state) benchmark::DoNotOptimize(confusion(a, b));
}
BENCHMARK(BM_Confusion);

void BM_ConfusionReference(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = blob(rng, kW, kH);
  const auto b = blob(rng, kW, kH);
  for (auto _ : state) benchmark::DoNotOptimize(reference::confusion(a, b));
}
BENCHMARK(BM_ConfusionReference);

void BM_Guillod(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const std::vector<BinaryMask> obs{blob(rng, kW, kH), blob(rng, kW, kH), blob(rng, kW, kH)};
  const auto automatic = blob(rng, kW, kH);
  for (auto _ : state) {
    benchmark::DoNotOptimize(guillod_error(build_probability_image(obs), automatic));
  }
}
BENCHMARK(BM_Guillod);

void BM_GuillodPrebuilt(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const std::vector<BinaryMask> obs{blob(rng, kW, kH), blob(rng, kW, kH), blob(rng, kW, kH)};
  const auto automatic = blob(rng, kW, kH);
  const auto prob = build_probability_image(obs);
  for (auto _ : state) benchmark::DoNotOptimize(guillod_error(prob, automatic));
}
BENCHMARK(BM_GuillodPrebuilt);

void BM_GuillodReference(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const std::vector<BinaryMask> obs{blob(rng, kW, kH), blob(rng, kW, kH), blob(rng, kW, kH)};
  const auto automatic = blob(rng, kW, kH);
  for (auto _ : state) benchmark::DoNotOptimize(reference::guillod_error(obs, automatic));
}
BENCHMARK(BM_GuillodReference);

// Pairwise reference is quadratic; compare on a side length given by the argument.
void BM_Pri(benchmark::State& state) {
  const auto side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const auto gts = blob_gts(rng, side, side);
  const auto test = to_label_map(blob(rng, side, side));
  for (auto _ : state) benchmark::DoNotOptimize(probabilistic_rand_index(test, gts));
}
BENCHMARK(BM_Pri)->Arg(32)->Arg(64)->Arg(512);

void BM_PriReference(benchmark::State& state) {
  const auto side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const auto gts = blob_gts(rng, side, side);
  const auto test = to_label_map(blob(rng, side, side));
  for (auto _ : state) benchmark::DoNotOptimize(reference::pri_pairwise(test, gts));
}
BENCHMARK(BM_PriReference)->Arg(32)->Arg(64);

void BM_ExpectedIndex(benchmark::State& state) {
  const auto side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::vector<GroundTruthSet> dataset;
  for (int phi = 0; phi < 8; ++phi) dataset.push_back(blob_gts(rng, side, side));
  const auto model = DatasetPairModel::build(dataset);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_rand_index(Dims{side, side}, dataset[0], model));
  }
}
BENCHMARK(BM_ExpectedIndex)->Arg(32)->Arg(512);

void BM_ExpectedIndexReference(benchmark::State& state) {
  const auto side = static_cast<int>(state.range(0));
  std::mt19937_64 rng(4);
  std::vector<GroundTruthSet> dataset;
  for (int phi = 0; phi < 8; ++phi) dataset.push_back(blob_gts(rng, side, side));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::expected_pri_pairwise(dataset[0], dataset));
  }
}
BENCHMARK(BM_ExpectedIndexReference)->Arg(32);

std::vector<Point> wobbly_curve() {
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 40;
    const double r = 180 + 30 * std::sin(5 * a);
    pts.push_back({kW / 2.0 + r * std::cos(a), kH / 2.0 + r * std::sin(a)});
  }
  return spline_points(pts, kDefaultSamplesPerSegment);
}

void BM_Fill(benchmark::State& state) {
  const auto curve = wobbly_curve();
  for (auto _ : state) benchmark::DoNotOptimize(fill_closed_curve(curve, Dims{kW, kH}));
}
BENCHMARK(BM_Fill);

void BM_FillReference(benchmark::State& state) {
  const auto curve = wobbly_curve();
  for (auto _ : state) benchmark::DoNotOptimize(reference::fill_pointwise(curve, Dims{kW, kH}));
}
BENCHMARK(BM_FillReference)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
