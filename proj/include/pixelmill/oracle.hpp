// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pixelmill/image.hpp"
#include "pixelmill/kernels.hpp"

namespace pixelmill {

// Full-frame double-precision references. These deliberately share the
// anchor and padding rules with the streaming path so any disagreement
// between the two isolates arithmetic, not geometry.

/// out(r,c) = sum_{i,j} k[i][j] * pad(img, r+i-a, c+j-a); a = 1 for 3x3
/// masks, a = 0 for 2x2 masks (top-left anchor). No quantization anywhere.
RealFrame correlate_full(const GrayImage& img, const Kernel& k, Padding padding);

/// Per-pixel sqrt(gx^2 + gy^2), or |gx| + |gy| when abs_sum is set.
RealFrame magnitude_frame(const RealFrame& gx, const RealFrame& gy, bool abs_sum);

struct FrameDiff {
  double max_abs_diff = 0.0;
  double mean_abs_diff = 0.0;
  double psnr = 0.0;   // dB, peak 255; meaningless when identical
  bool identical = false;  // max_abs_diff == 0 (PSNR would be infinite)
};

FrameDiff compare_frames(const RealFrame& a, const RealFrame& b);
FrameDiff compare_frames(const GrayImage& a, const GrayImage& b);

RealFrame to_real(const GrayImage& img);

/// Round to nearest (ties away from zero) and clamp into [0, 255].
GrayImage round_clamp_u8(const RealFrame& frame);

/// The whole reference path for one filter stage: correlation (two of them
/// plus a magnitude for gradient pairs), final round-and-clamp to 8 bits.
/// LoG cascades blur then Laplacian through the 8-bit boundary, mirroring
/// the streaming pipeline's stage contract.
GrayImage reference_filter(const GrayImage& img, OperatorKind kind, bool abs_sum,
                           Padding padding,
                           RobertsGyVariant roberts_gy = RobertsGyVariant::Cross);

/// Reference path for a single custom mask.
GrayImage reference_filter(const GrayImage& img, const Kernel& k, Padding padding);

}  // namespace pixelmill
