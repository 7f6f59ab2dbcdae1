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

#include "segeval/error.hpp"
#include "segeval/image_io.hpp"
#include "segeval/mask.hpp"
#include "support.hpp"

using namespace segeval;

TEST_CASE("dims_match") {
  CHECK(dims_match(BinaryMask(3, 3), BinaryMask(3, 3)));
  CHECK_FALSE(dims_match(BinaryMask(3, 3), BinaryMask(3, 4)));
  CHECK(dims_match(BinaryMask(768, 512), LabelMap(768, 512)));
}

TEST_CASE("to_label_map") {
  const auto all_lesion = to_label_map(BinaryMask(2, 2, true));
  for (std::size_t i = 0; i < 4; ++i) CHECK(all_lesion[i] == 1);
  const auto all_bg = to_label_map(BinaryMask(2, 2, false));
  for (std::size_t i = 0; i < 4; ++i) CHECK(all_bg[i] == 0);
  const auto checker = to_label_map(BinaryMask(2, 2, {1, 0, 0, 1}));
  CHECK(checker.at(0, 0) == 1);
  CHECK(checker.at(1, 0) == 0);
  CHECK(checker.at(0, 1) == 0);
  CHECK(checker.at(1, 1) == 1);
  CHECK(checker.dims() == Dims{2, 2});
}

TEST_CASE("to_label_map preserves the partition") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::random_mask(rng, 5, 4);
    const auto l = to_label_map(m);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) CHECK((m[i] == m[j]) == (l[i] == l[j]));
    }
  }
}

TEST_CASE("complement") {
  CHECK(complement(BinaryMask(3, 2, true)) == BinaryMask(3, 2, false));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = testing::random_mask(rng, testing::uniform_int(rng, 1, 9),
                                        testing::uniform_int(rng, 1, 9));
    const auto c = complement(m);
    CHECK(complement(c) == m);
    CHECK(c.lesion_count() == m.size() - m.lesion_count());
    CHECK(c.background_count() == m.lesion_count());
    CHECK(m.lesion_count() + m.background_count() == m.size());
  }
}

TEST_CASE("raster construction rejects bad shapes and labels") {
  CHECK_THROWS_AS(BinaryMask(0, 3), Error);
  CHECK_THROWS_AS(BinaryMask(2, 2, std::vector<std::uint8_t>(3)), Error);
  CHECK_THROWS_AS(LabelMap(1, 1, std::vector<std::uint8_t>{255}), Error);
  const LabelMap ok(1, 2, std::vector<std::uint8_t>{254, 0});
  CHECK(ok.label_bound() == 255);
}

TEST_CASE("equality is over pixel values, not input bytes") {
  CHECK(BinaryMask(2, 1, {7, 0}) == BinaryMask(2, 1, {1, 0}));
}

TEST_CASE("ground-truth set invariants") {
  std::vector<LabelMap> maps{LabelMap(2, 2), LabelMap(2, 2)};
  CHECK_THROWS_AS(GroundTruthSet(maps, {"a", "a"}), Error);
  CHECK_THROWS_AS(GroundTruthSet(maps, {"a"}), Error);
  CHECK_THROWS_AS(GroundTruthSet({}, {}), Error);
  try {
    GroundTruthSet({LabelMap(2, 2), LabelMap(3, 2)}, {"a", "b"});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("PGM round trip is bit exact") {
  std::mt19937_64 rng(3);
  GrayImage img{{7, 5}, {}};
  for (int i = 0; i < 35; ++i) img.values.push_back(static_cast<std::uint8_t>(rng() & 0xff));
  const auto bytes = encode_pgm(img);
  const auto back = decode_pgm(bytes);
  CHECK(back.dims == img.dims);
  CHECK(back.values == img.values);
  CHECK(encode_pgm(back) == bytes);

  testing::TempDir tmp("pgm");
  const auto mask = testing::random_mask(rng, 13, 6);
  write_mask_pgm(tmp.path() / "m.pgm", mask);
  CHECK(read_mask(tmp.path() / "m.pgm") == mask);
}

TEST_CASE("PGM threshold and header handling") {
  const std::string bytes = std::string("P5\n# comment\n4 1\n255\n") + '\x00' + '\x7f' + '\x80' + '\xff';
  const auto m = threshold_mask(decode_pgm(bytes));
  CHECK_FALSE(m[0]);
  CHECK_FALSE(m[1]);
  CHECK(m[2]);
  CHECK(m[3]);

  // maxval 1 scales 1 -> 255
  const std::string small = std::string("P5 2 1 1\n") + '\x00' + '\x01';
  const auto s = threshold_mask(decode_pgm(small));
  CHECK_FALSE(s[0]);
  CHECK(s[1]);

  CHECK_THROWS_AS(decode_pgm("P2\n1 1\n255\n0"), Error);
  CHECK_THROWS_AS(decode_pgm("P5\n4 4\n255\n\x01"), Error);
}

TEST_CASE("PNG masks use the same threshold") {
  testing::TempDir tmp("png");
  GrayImage img{{3, 1}, {0, 127, 128}};
  write_png(tmp.path() / "m.png", img);
  CHECK(sniff_format(tmp.path() / "m.png") == ImageFormat::Png);
  const auto m = read_mask(tmp.path() / "m.png");
  CHECK(m.dims() == Dims{3, 1});
  CHECK_FALSE(m[0]);
  CHECK_FALSE(m[1]);
  CHECK(m[2]);
}
