// SPDX-License-Identifier: Apache-2.0
#include "pixelmill/pipeline.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace pixelmill {

namespace {

uint128 umag(int128 v) {
  return v < 0 ? ~static_cast<uint128>(v) + 1 : static_cast<uint128>(v);
}

int bit_width_u128(uint128 v) {
  int n = 0;
  while (v != 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

// floor(sqrt(n)), digit-by-digit.
uint128 isqrt_u128(uint128 n) {
  if (n == 0) return 0;
  uint128 res = 0;
  int s = (bit_width_u128(n) + 1) & ~1;
  uint128 bit = uint128{1} << (s - 2);
  while (bit != 0) {
    if (n >= res + bit) {
      n -= res + bit;
      res = (res >> 1) + bit;
    } else {
      res >>= 1;
    }
    bit >>= 2;
  }
  return res;
}

// Nearest integer to sqrt(q) * 2^e (ties away from zero; q >= 0).
uint128 rounded_scaled_sqrt(uint128 q, int e) {
  if (q == 0) return 0;
  if (e >= 0) {
    const uint128 scaled = q << (2 * e);
    return (isqrt_u128(scaled << 2) + 1) >> 1;
  }
  const uint128 s = uint128{1} << (-e);
  return (isqrt_u128(q << 2) + s) / (s << 1);
}

}  // namespace

FixedValue gradient_magnitude(const FixedValue& gx, const FixedValue& gy, MagnitudeMode mode,
                              const FixedFormat& out_fmt) {
  const int fa = gx.format.fraction_bits;
  const int fb = gy.format.fraction_bits;
  const int f = fa > fb ? fa : fb;
  const int128 a = gx.raw_int() << (f - fa);
  const int128 b = gy.raw_int() << (f - fb);

  if (mode == MagnitudeMode::AbsSum) {
    const int128 sum = static_cast<int128>(umag(a)) + static_cast<int128>(umag(b));
    return quantize_scaled(sum, -f, out_fmt);
  }

  const uint128 ua = umag(a);
  const uint128 ub = umag(b);
  if (bit_width_u128(ua) > 62 || bit_width_u128(ub) > 62)
    throw Error("gradient operands too wide for exact magnitude");
  const uint128 sq = ua * ua + ub * ub;
  // Single rounding straight onto the output grid, then range handling.
  const uint128 t = rounded_scaled_sqrt(sq, out_fmt.fraction_bits - f);
  return quantize_scaled(static_cast<int128>(t), -out_fmt.fraction_bits, out_fmt);
}

double gradient_direction(const FixedValue& gx, const FixedValue& gy) {
  if (gx.raw_int() == 0 && gy.raw_int() == 0)
    throw UndefinedDirection("gradient direction is undefined at a zero gradient");
  return std::atan2(gy.value(), gx.value());
}

GrayImage threshold(const GrayImage& img, int level) {
  GrayImage out(img.width, img.height);
  for (size_t i = 0; i < img.pixels.size(); ++i)
    out.pixels[i] = img.pixels[i] >= level ? 255 : 0;
  return out;
}

namespace {

FixedFormat exact_magnitude_format(const FixedFormat& acc) {
  FixedFormat f;
  f.total_bits = acc.total_bits;
  f.fraction_bits = 0;
  f.is_signed = false;
  f.overflow = Overflow::Saturate;
  f.quantization = Quantization::RoundNearest;
  return f;
}

FixedFormat abs_sum_format(const FixedFormat& acc) {
  FixedFormat f;
  f.total_bits = acc.total_bits < 64 ? acc.total_bits + 1 : 64;
  f.fraction_bits = acc.fraction_bits;
  f.is_signed = false;
  f.overflow = Overflow::Saturate;
  f.quantization = Quantization::RoundNearest;
  return f;
}

void log_stage(std::vector<StageSummary>* log, const std::string& name, const GrayImage& out,
               uint64_t samples) {
  if (log == nullptr) return;
  int lo = 255;
  int hi = 0;
  for (uint8_t p : out.pixels) {
    lo = p < lo ? p : lo;
    hi = p > hi ? p : hi;
  }
  log->push_back({name, lo, hi, samples, samples});
}

GrayImage single_path_pass(const GrayImage& img, const Kernel& kernel, const PipelineConfig& cfg,
                           const std::string& name, std::vector<StageSummary>* log) {
  const PixelStream in = serialize(img, cfg.input_fmt);
  const MacFir fir(kernel, cfg.coeff_fmt, cfg.input_fmt, cfg.acc_fmt, cfg.acc_fmt);

  PixelStream out;
  out.format = cfg.acc_fmt;
  out.width = in.width;
  out.height = in.height;
  out.raw.reserve(in.count());

  WindowGenerator gen(in.width, in.height, kernel.size, cfg.padding);
  for (int64_t sample : in.raw)
    gen.push(sample, [&](const Window& w) { out.raw.push_back(fir(w).raw); });
  if (!gen.frame_done()) throw LengthMismatch("filter stage lost samples");

  GrayImage result = deserialize(out);
  log_stage(log, name, result, out.count());
  return result;
}

GrayImage dual_path_pass(const GrayImage& img, const Kernel& kx, const Kernel& ky,
                         MagnitudeMode mode, const PipelineConfig& cfg, const std::string& name,
                         std::vector<StageSummary>* log) {
  const PixelStream in = serialize(img, cfg.input_fmt);
  const MacFir fir_x(kx, cfg.coeff_fmt, cfg.input_fmt, cfg.acc_fmt, cfg.acc_fmt);
  const MacFir fir_y(ky, cfg.coeff_fmt, cfg.input_fmt, cfg.acc_fmt, cfg.acc_fmt);
  const FixedFormat mag_fmt =
      mode == MagnitudeMode::Exact ? exact_magnitude_format(cfg.acc_fmt) : abs_sum_format(cfg.acc_fmt);

  PixelStream out;
  out.format = mag_fmt;
  out.width = in.width;
  out.height = in.height;
  out.raw.reserve(in.count());

  // One shared window stream fans out to both FIRs.
  WindowGenerator gen(in.width, in.height, kx.size, cfg.padding);
  for (int64_t sample : in.raw)
    gen.push(sample, [&](const Window& w) {
      out.raw.push_back(gradient_magnitude(fir_x(w), fir_y(w), mode, mag_fmt).raw);
    });
  if (!gen.frame_done()) throw LengthMismatch("filter stage lost samples");

  GrayImage result = deserialize(out);
  log_stage(log, name, result, out.count());
  return result;
}

GrayImage run_filter(const GrayImage& img, const FilterStage& stage, const PipelineConfig& cfg,
                     std::vector<StageSummary>* log) {
  if (stage.op == OperatorKind::LoG) {
    GrayImage blurred =
        single_path_pass(img, kernel_for(OperatorKind::GaussianBlur, GradientPath::Single), cfg,
                         "log/gauss", log);
    return single_path_pass(blurred, kernel_for(OperatorKind::Laplacian, GradientPath::Single),
                            cfg, "log/laplacian", log);
  }
  if (is_dual_path(stage.op)) {
    const Kernel kx = kernel_for(stage.op, GradientPath::Gx, cfg.roberts_gy);
    const Kernel ky = kernel_for(stage.op, GradientPath::Gy, cfg.roberts_gy);
    const std::string name = std::string(operator_name(stage.op)) +
                             (stage.mode == MagnitudeMode::AbsSum ? ":abs" : ":exact");
    return dual_path_pass(img, kx, ky, stage.mode, cfg, name, log);
  }
  return single_path_pass(img, kernel_for(stage.op, GradientPath::Single), cfg,
                          std::string(operator_name(stage.op)), log);
}

}  // namespace

GrayImage run_pipeline(const GrayImage& img, const PipelineSpec& spec,
                       std::vector<StageSummary>* log) {
  if (spec.stages.empty()) throw Error("pipeline has no stages");
  GrayImage frame = img;
  for (const Stage& stage : spec.stages) {
    if (const auto* f = std::get_if<FilterStage>(&stage)) {
      frame = run_filter(frame, *f, spec.config, log);
    } else if (const auto* c = std::get_if<CustomStage>(&stage)) {
      frame = single_path_pass(frame, c->kernel, spec.config, "custom", log);
    } else {
      const auto& t = std::get<ThresholdStage>(stage);
      frame = threshold(frame, t.level);
      log_stage(log, "thresh=" + std::to_string(t.level), frame, frame.size());
    }
  }
  return frame;
}

PipelineSpec parse_pipeline(std::string_view text, const PipelineConfig& config,
                            const Kernel* custom_kernel) {
  PipelineSpec spec;
  spec.config = config;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw ParseError("empty stage in pipeline spec");

    if (tok.rfind("thresh=", 0) == 0) {
      const std::string_view num = tok.substr(7);
      int level = 0;
      if (num.empty()) throw ParseError("missing threshold level in '" + std::string(tok) + "'");
      for (char ch : num) {
        if (ch < '0' || ch > '9')
          throw ParseError("bad threshold level in '" + std::string(tok) + "'");
        level = level * 10 + (ch - '0');
        if (level > 255) throw ParseError("threshold level out of 0..255 in '" + std::string(tok) + "'");
      }
      spec.stages.emplace_back(ThresholdStage{level});
    } else {
      std::string_view name = tok;
      std::string_view suffix;
      if (const size_t colon = tok.find(':'); colon != std::string_view::npos) {
        name = tok.substr(0, colon);
        suffix = tok.substr(colon + 1);
      }
      MagnitudeMode mode = MagnitudeMode::Exact;
      bool has_suffix = !suffix.empty();
      if (has_suffix) {
        if (suffix == "exact")
          mode = MagnitudeMode::Exact;
        else if (suffix == "abs")
          mode = MagnitudeMode::AbsSum;
        else
          throw ParseError("unknown magnitude suffix ':" + std::string(suffix) + "' in '" +
                           std::string(tok) + "'");
      }

      if (name == "custom") {
        if (has_suffix)
          throw ParseError("'custom' is a single mask; magnitude suffix not applicable");
        if (custom_kernel == nullptr)
          throw ParseError("pipeline names 'custom' but no custom kernel was supplied");
        spec.stages.emplace_back(CustomStage{*custom_kernel});
      } else if (auto kind = operator_from_name(name)) {
        if (has_suffix && !is_dual_path(*kind))
          throw ParseError("magnitude suffix on single-path stage '" + std::string(tok) + "'");
        spec.stages.emplace_back(FilterStage{*kind, mode});
      } else {
        throw ParseError("unknown stage '" + std::string(tok) + "'");
      }
    }

    if (end == text.size()) break;
    pos = end + 1;
  }

  if (spec.stages.empty()) throw ParseError("pipeline spec is empty");
  return spec;
}

}  // namespace pixelmill
