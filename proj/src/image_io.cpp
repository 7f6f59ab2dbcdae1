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

#include "segeval/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "segeval/error.hpp"

namespace segeval {

namespace {

constexpr std::uint8_t kLesionValue = 255;
constexpr std::uint8_t kThreshold = 128;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open '" + path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(const std::string& bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  const auto start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  return bytes.substr(start, pos - start);
}

int parse_positive(const std::string& token, const char* what) {
  if (token.empty() || token.size() > 9 ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(Errc::ParseError, std::string("bad PGM ") + what + " '" + token + "'");
  }
  const int v = std::stoi(token);
  if (v < 1) throw Error(Errc::ParseError, std::string("PGM ") + what + " must be positive");
  return v;
}

}  // namespace

GrayImage decode_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  if (next_token(bytes, pos) != "P5") throw Error(Errc::ParseError, "not a binary PGM (P5)");
  GrayImage img;
  img.dims.width = parse_positive(next_token(bytes, pos), "width");
  img.dims.height = parse_positive(next_token(bytes, pos), "height");
  const int maxval = parse_positive(next_token(bytes, pos), "maxval");
  if (maxval > 255) throw Error(Errc::ParseError, "16-bit PGM is not supported");
  if (pos >= bytes.size()) throw Error(Errc::ParseError, "PGM truncated after header");
  ++pos;  // single whitespace byte ends the header
  const auto n = img.dims.pixels();
  if (bytes.size() - pos < n) throw Error(Errc::ParseError, "PGM pixel data truncated");
  img.values.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                    bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  if (maxval != 255) {
    for (auto& v : img.values) v = static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
  }
  return img;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(slurp(path));
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) {
      throw Error(Errc::ParseError, path.string() + ": " + e.what());
    }
    throw;
  }
}

std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.dims.width) + " " +
                    std::to_string(img.dims.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.values.data()), img.values.size());
  return out;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MissingFile, "cannot write '" + path.string() + "'");
  const auto bytes = encode_pgm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

GrayImage read_png(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(Errc::ParseError, path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  GrayImage img;
  img.dims = {static_cast<int>(image.width), static_cast<int>(image.height)};
  img.values.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, img.values.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(Errc::ParseError, path.string() + ": " + msg);
  }
  return img;
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.dims.width);
  image.height = static_cast<png_uint_32>(img.dims.height);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.values.data(), 0, nullptr)) {
    throw Error(Errc::MissingFile, path.string() + ": " + image.message);
  }
}

BinaryMask threshold_mask(const GrayImage& img) {
  std::vector<std::uint8_t> px(img.values.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = img.values[i] >= kThreshold ? 1 : 0;
  return BinaryMask(img.dims.width, img.dims.height, std::move(px));
}

GrayImage mask_to_gray(const BinaryMask& m) {
  GrayImage img{m.dims(), {}};
  img.values.reserve(m.size());
  for (auto v : m.pixels()) img.values.push_back(v ? kLesionValue : 0);
  return img;
}

ImageFormat sniff_format(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, "cannot open '" + path.string() + "'");
  char head[8] = {};
  in.read(head, sizeof head);
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got >= 2 && head[0] == 'P' && head[1] == '5') return ImageFormat::Pgm;
  static constexpr unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (got == 8 && std::memcmp(head, kPngSig, 8) == 0) return ImageFormat::Png;
  return ImageFormat::Unknown;
}

BinaryMask read_mask(const std::filesystem::path& path) {
  switch (sniff_format(path)) {
    case ImageFormat::Pgm: return threshold_mask(read_pgm(path));
    case ImageFormat::Png: return threshold_mask(read_png(path));
    case ImageFormat::Unknown: break;
  }
  throw Error(Errc::ParseError, "'" + path.string() + "' is neither binary PGM nor PNG");
}

void write_mask_pgm(const std::filesystem::path& path, const BinaryMask& m) {
  write_pgm(path, mask_to_gray(m));
}

}  // namespace segeval
