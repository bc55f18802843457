// SPDX-License-Identifier: Apache-2.0
#include "pixelmill/streamcore.hpp"

#include <algorithm>
#include <string>

namespace pixelmill {

PixelStream serialize(const GrayImage& img, const FixedFormat& fmt) {
  if (!fmt.valid()) throw Error("invalid stream format");
  // 255 must survive the trip exactly.
  const int128 needed = int128{255} << fmt.fraction_bits;
  if (fmt.max_int() < needed)
    throw FormatTooNarrow("format " + fmt.to_string() + " cannot represent 255");

  PixelStream s;
  s.format = fmt;
  s.width = img.width;
  s.height = img.height;
  s.raw.resize(img.pixels.size());
  for (size_t i = 0; i < img.pixels.size(); ++i)
    s.raw[i] = static_cast<int64_t>(img.pixels[i]) << fmt.fraction_bits;
  return s;
}

GrayImage deserialize(const PixelStream& s) {
  if (s.count() != static_cast<size_t>(s.width) * s.height)
    throw LengthMismatch("stream has " + std::to_string(s.count()) + " samples for a " +
                         std::to_string(s.width) + "x" + std::to_string(s.height) + " frame");
  FixedFormat pixel_fmt;
  pixel_fmt.total_bits = 8;
  pixel_fmt.fraction_bits = 0;
  pixel_fmt.is_signed = false;
  pixel_fmt.overflow = Overflow::Saturate;
  pixel_fmt.quantization = s.format.quantization;

  GrayImage img(s.width, s.height);
  for (size_t i = 0; i < s.raw.size(); ++i) {
    const FixedValue v = s.at(i);
    img.pixels[i] =
        static_cast<uint8_t>(quantize_scaled(v.raw_int(), -s.format.fraction_bits, pixel_fmt).raw);
  }
  return img;
}

WindowGenerator::WindowGenerator(int width, int height, int k, Padding padding)
    : width_(width),
      height_(height),
      k_(k),
      anchor_(k == 2 ? 0 : (k - 1) / 2),
      padding_(padding),
      total_(static_cast<uint64_t>(width) * height),
      rows_(static_cast<size_t>(k) * width, 0) {
  if (k != 2 && k != 3) throw Error("window size must be 2 or 3");
  if (width < 1 || height < 1) throw Error("window generator needs a non-empty frame");
}

void WindowGenerator::store(int64_t sample) {
  if (consumed_ >= total_) throw LengthMismatch("more samples pushed than the frame holds");
  const auto r = static_cast<int>(consumed_ / width_);
  const auto c = static_cast<int>(consumed_ % width_);
  rows_[static_cast<size_t>(r % k_) * width_ + c] = sample;
  ++consumed_;
}

uint64_t WindowGenerator::last_needed_index(uint64_t out_index) const noexcept {
  const int r = static_cast<int>(out_index / width_);
  const int c = static_cast<int>(out_index % width_);
  // Bottom-right in-frame source pixel of this window.
  const int last_r = std::min(r - anchor_ + k_ - 1, height_ - 1);
  const int last_c = std::min(c - anchor_ + k_ - 1, width_ - 1);
  return static_cast<uint64_t>(last_r) * width_ + last_c;
}

int64_t WindowGenerator::padded_sample(int r, int c) const {
  if (r < 0 || r >= height_ || c < 0 || c >= width_) {
    if (padding_ == Padding::Zero) return 0;
    r = r < 0 ? 0 : (r >= height_ ? height_ - 1 : r);
    c = c < 0 ? 0 : (c >= width_ ? width_ - 1 : c);
  }
  return rows_[static_cast<size_t>(r % k_) * width_ + c];
}

void WindowGenerator::build(uint64_t out_index, Window& w) const {
  const int r = static_cast<int>(out_index / width_);
  const int c = static_cast<int>(out_index % width_);
  w.k = k_;
  w.out_row = r;
  w.out_col = c;
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j)
      w.raw[i * k_ + j] = padded_sample(r + i - anchor_, c + j - anchor_);
}

std::vector<Window> window_stream(const PixelStream& s, int k, Padding padding) {
  WindowGenerator gen(s.width, s.height, k, padding);
  std::vector<Window> out;
  out.reserve(s.count());
  for (int64_t sample : s.raw) gen.push(sample, [&](const Window& w) { out.push_back(w); });
  if (!gen.frame_done()) throw LengthMismatch("stream ended before the frame was complete");
  return out;
}

MacFir::MacFir(const Kernel& kernel, const FixedFormat& tap_fmt, const FixedFormat& input_fmt,
               const FixedFormat& accumulator_fmt, const FixedFormat& out_fmt)
    : ntaps_(kernel.tap_count()),
      k_(kernel.size),
      tap_fmt_(tap_fmt),
      input_fmt_(input_fmt),
      acc_fmt_(accumulator_fmt),
      out_fmt_(out_fmt) {
  for (const FixedFormat* f : {&tap_fmt_, &input_fmt_, &acc_fmt_, &out_fmt_})
    if (!f->valid()) throw Error("invalid fixed-point format in FIR configuration");

  for (int i = 0; i < ntaps_; ++i) tap_raw_[i] = quantize(kernel.coeffs[i], tap_fmt_).raw;

  // The exact dot product carries tap_f + input_f fraction bits; the
  // accumulator must hold it without any rounding or overflow.
  const int sum_frac = tap_fmt_.fraction_bits + input_fmt_.fraction_bits;
  if (acc_fmt_.fraction_bits < sum_frac)
    throw AccumulatorTooNarrow("accumulator " + acc_fmt_.to_string() + " has fewer than " +
                               std::to_string(sum_frac) + " fraction bits");

  // Exact interval of the sum over all admissible windows.
  const int128 in_lo = input_fmt_.min_int();
  const int128 in_hi = input_fmt_.max_int();
  int128 sum_lo = 0;
  int128 sum_hi = 0;
  for (int i = 0; i < ntaps_; ++i) {
    const int128 t = FixedValue{tap_raw_[i], tap_fmt_}.raw_int();
    const int128 a = t * in_lo;
    const int128 b = t * in_hi;
    sum_lo += a < b ? a : b;
    sum_hi += a < b ? b : a;
  }
  const int up = acc_fmt_.fraction_bits - sum_frac;
  if ((sum_lo << up) < acc_fmt_.min_int() || (sum_hi << up) > acc_fmt_.max_int())
    throw AccumulatorTooNarrow("accumulator " + acc_fmt_.to_string() +
                               " overflows for the configured taps");
}

FixedValue MacFir::operator()(const Window& w) const {
  if (w.k != k_)
    throw DimensionMismatch("window is " + std::to_string(w.k) + "x" + std::to_string(w.k) +
                            ", FIR expects " + std::to_string(k_) + "x" + std::to_string(k_));
  int128 acc = 0;
  for (int i = 0; i < ntaps_; ++i) {
    const int128 t = FixedValue{tap_raw_[i], tap_fmt_}.raw_int();
    const int128 x = FixedValue{w.raw[i], input_fmt_}.raw_int();
    acc += t * x;
  }
  return quantize_scaled(acc, -(tap_fmt_.fraction_bits + input_fmt_.fraction_bits), out_fmt_);
}

}  // namespace pixelmill
