// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pixelmill/kernels.hpp"
#include "pixelmill/streamcore.hpp"

namespace pixelmill {

/// How a gradient pair combines into one edge-strength value.
/// AbsSum >= Exact >= max(|gx|, |gy|) pointwise.
enum class MagnitudeMode { Exact, AbsSum };

struct FilterStage {
  OperatorKind op = OperatorKind::Sobel;
  MagnitudeMode mode = MagnitudeMode::Exact;  // ignored for single-path operators
};

struct CustomStage {
  Kernel kernel;
};

struct ThresholdStage {
  int level = 128;  // pixel >= level -> 255, else 0
};

using Stage = std::variant<FilterStage, CustomStage, ThresholdStage>;

/// Number formats and geometry shared by every filter stage of a run.
struct PipelineConfig {
  FixedFormat input_fmt{8, 0, false, Overflow::Saturate, Quantization::Truncate};
  FixedFormat coeff_fmt{12, 4, true, Overflow::Saturate, Quantization::RoundNearest};
  FixedFormat acc_fmt{24, 8, true, Overflow::Saturate, Quantization::RoundNearest};
  Padding padding = Padding::Zero;
  RobertsGyVariant roberts_gy = RobertsGyVariant::Cross;
};

struct PipelineSpec {
  std::vector<Stage> stages;
  PipelineConfig config{};
};

/// Parses the comma-separated stage list, e.g. "gauss,sobel:abs,thresh=80,sharpen".
/// Stage names come from the operator catalog; dual-path names accept an
/// ":exact" or ":abs" magnitude suffix; "thresh=<0..255>" thresholds; the
/// name "custom" refers to `custom_kernel` (required when used).
/// Throws ParseError naming the offending token.
PipelineSpec parse_pipeline(std::string_view text, const PipelineConfig& config,
                            const Kernel* custom_kernel = nullptr);

struct StageSummary {
  std::string name;
  int out_min = 0;
  int out_max = 0;
  uint64_t samples_in = 0;
  uint64_t samples_out = 0;
};

/// Runs the stages left to right. Each filter stage is the full streaming
/// path: serialize -> window generator -> MAC FIR (two FIRs plus magnitude
/// for gradient pairs) -> deserialize, so every stage consumes and produces
/// an 8-bit frame. Deterministic: equal inputs give bit-identical outputs.
GrayImage run_pipeline(const GrayImage& img, const PipelineSpec& spec,
                       std::vector<StageSummary>* log = nullptr);

/// Edge strength of one gradient sample pair. Exact mode takes the square
/// root of gx^2 + gy^2 in wide integer arithmetic and rounds it to the
/// nearest point of out_fmt's grid (the only quantization on the magnitude
/// path); AbsSum is |gx| + |gy| exactly, then quantized into out_fmt.
FixedValue gradient_magnitude(const FixedValue& gx, const FixedValue& gy, MagnitudeMode mode,
                              const FixedFormat& out_fmt);

/// Four-quadrant gradient orientation atan2(gy, gx), radians. Throws
/// UndefinedDirection when both components are zero.
double gradient_direction(const FixedValue& gx, const FixedValue& gy);

/// Binary segmentation: pixel >= level -> 255, else 0.
GrayImage threshold(const GrayImage& img, int level);

}  // namespace pixelmill
