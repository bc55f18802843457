// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pixelmill/fixed.hpp"
#include "pixelmill/image.hpp"
#include "pixelmill/kernels.hpp"

namespace pixelmill {

/// Raster-ordered sample stream (left to right, top to bottom). All samples
/// share one format; `raw` holds their bit patterns.
struct PixelStream {
  FixedFormat format{};
  int width = 0;
  int height = 0;
  std::vector<int64_t> raw;

  size_t count() const noexcept { return raw.size(); }
  FixedValue at(size_t i) const { return FixedValue{raw[i], format}; }
};

/// Converts a frame to scalar samples in raster order; every pixel value is
/// represented exactly. Throws FormatTooNarrow if fmt cannot hold 255.
PixelStream serialize(const GrayImage& img, const FixedFormat& fmt);

/// Reassembles a frame from a raster stream: each sample is brought to the
/// integer grid per its format's quantization policy, then saturated into
/// [0, 255]. The frame boundary owns the final 8-bit clamp. Throws
/// LengthMismatch when the sample count is not width*height.
GrayImage deserialize(const PixelStream& s);

/// One K x K neighborhood, row-major raw samples in the source stream's
/// format. out_row/out_col name the output pixel the window belongs to.
struct Window {
  int k = 3;
  int out_row = 0;
  int out_col = 0;
  std::array<int64_t, 9> raw{};
};

/// Line-buffered sliding-window generator. Feed raster samples with push();
/// each push hands every window that has just become complete to the sink,
/// in raster order of output coordinates. Retains only the last K rows
/// (the K-1 line buffers plus the row being filled). Border windows resolve
/// out-of-range taps per the padding policy.
///
/// For 3x3 windows the output pixel sits at the window center; 2x2 windows
/// anchor top-left (output pixel = window's top-left source coordinate).
/// Emission is as early as the data allows: a window is handed out on the
/// push that delivers its last in-frame sample, so the first window of a
/// frame with width, height > K appears after exactly
/// ceil((K-1)/2) * width + ceil((K-1)/2) earlier samples.
class WindowGenerator {
 public:
  WindowGenerator(int width, int height, int k, Padding padding);

  template <typename Sink>  // void(const Window&)
  void push(int64_t sample, Sink&& sink) {
    store(sample);
    Window w;
    while (next_out_ < total_ && last_needed_index(next_out_) < consumed_) {
      build(next_out_, w);
      sink(static_cast<const Window&>(w));
      ++next_out_;
    }
  }

  uint64_t samples_consumed() const noexcept { return consumed_; }
  uint64_t windows_emitted() const noexcept { return next_out_; }
  bool frame_done() const noexcept { return next_out_ == total_; }

 private:
  void store(int64_t sample);
  void build(uint64_t out_index, Window& w) const;
  uint64_t last_needed_index(uint64_t out_index) const noexcept;
  int64_t padded_sample(int r, int c) const;

  int width_;
  int height_;
  int k_;
  int anchor_;  // 1 for 3x3, 0 for 2x2
  Padding padding_;
  uint64_t total_;
  uint64_t consumed_ = 0;
  uint64_t next_out_ = 0;
  std::vector<int64_t> rows_;  // ring of the last k_ rows, row-major
};

/// All width*height windows of the stream, in raster order.
std::vector<Window> window_stream(const PixelStream& s, int k, Padding padding);

/// Programmable-coefficient multiply-accumulate FIR over one window. Taps
/// are the kernel coefficients quantized into tap_fmt; the accumulator
/// format is validated at construction to hold the exact running sum for
/// every admissible input window, so the dot product itself never rounds.
/// The single quantization happens at the output, into out_fmt.
class MacFir {
 public:
  MacFir(const Kernel& kernel, const FixedFormat& tap_fmt, const FixedFormat& input_fmt,
         const FixedFormat& accumulator_fmt, const FixedFormat& out_fmt);

  FixedValue operator()(const Window& w) const;

  int tap_count() const noexcept { return ntaps_; }
  FixedValue tap(int i) const { return FixedValue{tap_raw_[i], tap_fmt_}; }
  const FixedFormat& out_format() const noexcept { return out_fmt_; }

 private:
  int ntaps_;
  int k_;
  std::array<int64_t, 9> tap_raw_{};
  FixedFormat tap_fmt_;
  FixedFormat input_fmt_;
  FixedFormat acc_fmt_;
  FixedFormat out_fmt_;
};

}  // namespace pixelmill
