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

#ifndef SEGEVAL_IMAGE_IO_HPP
#define SEGEVAL_IMAGE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "segeval/mask.hpp"

namespace segeval {

/// 8-bit grayscale raster as read from disk, before thresholding.
struct GrayImage {
  Dims dims;
  std::vector<std::uint8_t> values;
};

// Binary PGM (P5). Masks are written 0 = background, 255 = lesion.
// On read any value >= 128 (after scaling to maxval 255) is lesion.
GrayImage read_pgm(const std::filesystem::path& path);
GrayImage decode_pgm(const std::string& bytes);
std::string encode_pgm(const GrayImage& img);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

GrayImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const GrayImage& img);

BinaryMask threshold_mask(const GrayImage& img);
GrayImage mask_to_gray(const BinaryMask& m);

/// Dispatches on the file signature (P5 or PNG).
BinaryMask read_mask(const std::filesystem::path& path);
void write_mask_pgm(const std::filesystem::path& path, const BinaryMask& m);

enum class ImageFormat { Pgm, Png, Unknown };
ImageFormat sniff_format(const std::filesystem::path& path);

}  // namespace segeval

#endif  // SEGEVAL_IMAGE_IO_HPP
