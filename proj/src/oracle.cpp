// SPDX-License-Identifier: Apache-2.0
#include "pixelmill/oracle.hpp"

#include <cmath>

namespace pixelmill {

namespace {

double padded_read(const GrayImage& img, int r, int c, Padding padding) {
  if (r >= 0 && r < img.height && c >= 0 && c < img.width) return img.at(r, c);
  if (padding == Padding::Zero) return 0.0;
  const int rr = r < 0 ? 0 : (r >= img.height ? img.height - 1 : r);
  const int cc = c < 0 ? 0 : (c >= img.width ? img.width - 1 : c);
  return img.at(rr, cc);
}

}  // namespace

RealFrame correlate_full(const GrayImage& img, const Kernel& k, Padding padding) {
  const int anchor = k.size == 2 ? 0 : (k.size - 1) / 2;
  RealFrame out(img.width, img.height);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      double acc = 0.0;
      for (int i = 0; i < k.size; ++i)
        for (int j = 0; j < k.size; ++j)
          acc += k.at(i, j).to_double() * padded_read(img, r + i - anchor, c + j - anchor, padding);
      out.at(r, c) = acc;
    }
  }
  return out;
}

RealFrame magnitude_frame(const RealFrame& gx, const RealFrame& gy, bool abs_sum) {
  if (gx.width != gy.width || gx.height != gy.height)
    throw DimensionMismatch("gradient frames differ in size");
  RealFrame out(gx.width, gx.height);
  for (size_t i = 0; i < out.values.size(); ++i) {
    const double x = gx.values[i];
    const double y = gy.values[i];
    out.values[i] = abs_sum ? std::abs(x) + std::abs(y) : std::sqrt(x * x + y * y);
  }
  return out;
}

FrameDiff compare_frames(const RealFrame& a, const RealFrame& b) {
  if (a.width != b.width || a.height != b.height)
    throw DimensionMismatch("frames are " + std::to_string(a.width) + "x" +
                            std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                            std::to_string(b.height));
  FrameDiff d;
  double sq_sum = 0.0;
  double abs_sum = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    const double diff = std::abs(a.values[i] - b.values[i]);
    if (diff > d.max_abs_diff) d.max_abs_diff = diff;
    abs_sum += diff;
    sq_sum += diff * diff;
  }
  const auto n = static_cast<double>(a.values.size());
  d.mean_abs_diff = abs_sum / n;
  if (d.max_abs_diff == 0.0) {
    d.identical = true;
  } else {
    d.psnr = 10.0 * std::log10(255.0 * 255.0 / (sq_sum / n));
  }
  return d;
}

FrameDiff compare_frames(const GrayImage& a, const GrayImage& b) {
  return compare_frames(to_real(a), to_real(b));
}

RealFrame to_real(const GrayImage& img) {
  RealFrame out(img.width, img.height);
  for (size_t i = 0; i < img.pixels.size(); ++i) out.values[i] = img.pixels[i];
  return out;
}

GrayImage round_clamp_u8(const RealFrame& frame) {
  GrayImage out(frame.width, frame.height);
  for (size_t i = 0; i < frame.values.size(); ++i) {
    const long long v = std::llround(frame.values[i]);
    out.pixels[i] = static_cast<uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
  }
  return out;
}

GrayImage reference_filter(const GrayImage& img, OperatorKind kind, bool abs_sum, Padding padding,
                           RobertsGyVariant roberts_gy) {
  if (kind == OperatorKind::LoG) {
    const GrayImage blurred = reference_filter(img, OperatorKind::GaussianBlur, false, padding);
    return reference_filter(blurred, OperatorKind::Laplacian, false, padding);
  }
  if (is_dual_path(kind)) {
    const RealFrame gx =
        correlate_full(img, kernel_for(kind, GradientPath::Gx, roberts_gy), padding);
    const RealFrame gy =
        correlate_full(img, kernel_for(kind, GradientPath::Gy, roberts_gy), padding);
    return round_clamp_u8(magnitude_frame(gx, gy, abs_sum));
  }
  return round_clamp_u8(correlate_full(img, kernel_for(kind, GradientPath::Single), padding));
}

GrayImage reference_filter(const GrayImage& img, const Kernel& k, Padding padding) {
  return round_clamp_u8(correlate_full(img, k, padding));
}

}  // namespace pixelmill
