// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <variant>
#include <vector>

#include "pixelmill/core.hpp"

namespace pixelmill {

/// 8-bit grayscale frame, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  size_t size() const noexcept { return pixels.size(); }
  uint8_t at(int r, int c) const { return pixels[static_cast<size_t>(r) * width + c]; }
  uint8_t& at(int r, int c) { return pixels[static_cast<size_t>(r) * width + c]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB frame, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  GrayImage to_gray_shape() const { return GrayImage(width, height); }
  const Rgb& at(int r, int c) const { return pixels[static_cast<size_t>(r) * width + c]; }
  Rgb& at(int r, int c) { return pixels[static_cast<size_t>(r) * width + c]; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Full-frame real-valued image, row-major doubles.
struct RealFrame {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  RealFrame() = default;
  RealFrame(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<size_t>(w) * h, fill) {}

  double at(int r, int c) const { return values[static_cast<size_t>(r) * width + c]; }
  double& at(int r, int c) { return values[static_cast<size_t>(r) * width + c]; }
};

using AnyImage = std::variant<GrayImage, RgbImage>;

/// Decodes PGM (P2/P5) or PPM (P3/P6) with maxval 255. Header comments (#)
/// are accepted. Throws IoError / FormatError; format errors name the byte
/// offset of the problem.
AnyImage read_image(const std::filesystem::path& path);

/// BT.601 luma: y = round(0.299 r + 0.587 g + 0.114 b), ties away from zero.
/// Gray triples map to themselves exactly.
GrayImage rgb_to_gray(const RgbImage& img);

/// Grayscale view of any decoded image (RGB gets converted).
GrayImage to_gray(const AnyImage& img);

/// Writes binary PGM (P5, maxval 255). The file is written to a temporary
/// name and renamed into place, so a failed write never leaves a partial
/// file at `path`. Round-trips bit-exactly through read_image.
void write_image(const GrayImage& img, const std::filesystem::path& path);

/// Per-pixel intensity / 255 in [0, 1].
RealFrame normalize(const GrayImage& img);

}  // namespace pixelmill
