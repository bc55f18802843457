// SPDX-License-Identifier: Apache-2.0
//
// pixelmill — streaming fixed-point image filtering with a floating-point
// reference path, ROI statistics, and a kernel catalog.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pixelmill/oracle.hpp"
#include "pixelmill/pipeline.hpp"
#include "pixelmill/roi.hpp"

namespace pm = pixelmill;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiff = 1;       // compare: beyond tolerance
constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitBadSpec = 4;
constexpr int kExitBadRoi = 5;

struct CommonOpts {
  std::string pad;        // "", "zero", "replicate"
  std::string coeff_fmt;  // --fixed
  std::string acc_fmt;    // --acc
  std::string roberts_gy = "cross";
  std::string custom_csv;  // -k
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--pad", opts.pad, "Border policy: zero|replicate (default zero; "
                                     "PIXELMILL_PAD overrides the default)")
      ->check(CLI::IsMember({"zero", "replicate"}));
  cmd->add_option("--fixed", opts.coeff_fmt,
                  "Coefficient fixed-point format, e.g. s12.4 or u8.0:sat:trunc");
  cmd->add_option("--acc", opts.acc_fmt, "Accumulator fixed-point format, e.g. s24.8:sat:round");
  cmd->add_option("--roberts-gy", opts.roberts_gy,
                  "Roberts second mask: cross (zero-sum) or skew ([[0,1],[-1,1]])")
      ->check(CLI::IsMember({"cross", "skew"}));
  cmd->add_option("-k,--kernel", opts.custom_csv,
                  "Custom 3x3 mask: nine comma-separated rationals (stage name 'custom')");
}

pm::PipelineConfig make_config(const CommonOpts& opts) {
  pm::PipelineConfig cfg;
  if (const char* env = std::getenv("PIXELMILL_PAD"); env != nullptr && *env != '\0') {
    const std::string v = env;
    if (v == "zero")
      cfg.padding = pm::Padding::Zero;
    else if (v == "replicate")
      cfg.padding = pm::Padding::Replicate;
    else
      throw pm::Error("PIXELMILL_PAD must be 'zero' or 'replicate', got '" + v + "'");
  }
  if (!opts.pad.empty()) cfg.padding = opts.pad == "zero" ? pm::Padding::Zero : pm::Padding::Replicate;
  if (!opts.coeff_fmt.empty()) cfg.coeff_fmt = pm::FixedFormat::parse(opts.coeff_fmt);
  if (!opts.acc_fmt.empty()) cfg.acc_fmt = pm::FixedFormat::parse(opts.acc_fmt);
  cfg.roberts_gy =
      opts.roberts_gy == "skew" ? pm::RobertsGyVariant::Skew : pm::RobertsGyVariant::Cross;
  return cfg;
}

std::optional<pm::Kernel> make_custom(const CommonOpts& opts) {
  if (opts.custom_csv.empty()) return std::nullopt;
  return pm::parse_custom_kernel(opts.custom_csv);
}

pm::GrayImage load_gray(const std::string& path) {
  return pm::to_gray(pm::read_image(path));
}

void print_stage_log(const std::vector<pm::StageSummary>& log) {
  for (const auto& s : log)
    std::fprintf(stderr, "[stage] %-14s out %3d..%3d  (%llu samples)\n", s.name.c_str(),
                 s.out_min, s.out_max, static_cast<unsigned long long>(s.samples_out));
}

int cmd_filter(const std::string& input, const std::string& pipeline_text,
               const std::string& output, const CommonOpts& opts) {
  const pm::PipelineConfig cfg = make_config(opts);
  const std::optional<pm::Kernel> custom = make_custom(opts);

  pm::PipelineSpec spec;
  if (pipeline_text.empty()) {
    if (!custom) throw pm::ParseError("no pipeline given: pass -p <spec> and/or -k <kernel>");
    spec.config = cfg;
    spec.stages = {pm::CustomStage{*custom}};
  } else {
    spec = pm::parse_pipeline(pipeline_text, cfg, custom ? &*custom : nullptr);
  }

  const pm::GrayImage img = load_gray(input);
  std::vector<pm::StageSummary> log;
  const pm::GrayImage out = pm::run_pipeline(img, spec, &log);
  print_stage_log(log);
  pm::write_image(out, output);
  return kExitOk;
}

int cmd_detect(const std::string& input, const std::string& op_name, const std::string& mode,
               int thresh, const std::string& output, const CommonOpts& opts) {
  const auto kind = pm::operator_from_name(op_name);
  if (!kind) throw pm::ParseError("unknown operator '" + op_name + "'");
  const pm::MagnitudeMode mag =
      mode == "abs" ? pm::MagnitudeMode::AbsSum : pm::MagnitudeMode::Exact;

  pm::PipelineSpec spec;
  spec.config = make_config(opts);
  spec.stages = {pm::FilterStage{*kind, mag}};
  if (thresh >= 0) spec.stages.emplace_back(pm::ThresholdStage{thresh});

  const pm::GrayImage img = load_gray(input);
  std::vector<pm::StageSummary> log;
  const pm::GrayImage out = pm::run_pipeline(img, spec, &log);
  print_stage_log(log);
  pm::write_image(out, output);
  return kExitOk;
}

std::filesystem::path masked_output_path(const std::string& base, const std::string& label,
                                         bool multiple) {
  std::filesystem::path p(base);
  if (!multiple) return p;
  std::filesystem::path named = p.parent_path();
  named /= p.stem();
  named += "." + label;
  named += p.extension();
  return named;
}

int cmd_stats(const std::string& input, const std::vector<std::string>& roi_args,
              const std::string& output, const std::string& precision) {
  struct LabeledRoi {
    std::string label;
    pm::RoiSpec roi;
  };
  std::vector<LabeledRoi> rois;
  for (size_t i = 0; i < roi_args.size(); ++i) {
    const std::string& arg = roi_args[i];
    const size_t eq = arg.find('=');
    std::string label = eq == std::string::npos ? "roi" + std::to_string(i + 1)
                                                : arg.substr(0, eq);
    const std::string spec = eq == std::string::npos ? arg : arg.substr(eq + 1);
    rois.push_back({std::move(label), pm::RoiSpec::parse(spec)});
  }

  const pm::GrayImage img = load_gray(input);
  std::vector<pm::StatsReport> reports;
  for (const auto& [label, roi] : rois) {
    const pm::RoiExtract ex = pm::extract_roi(img, roi);
    pm::StatsReport rep = pm::compute_stats(std::span<const uint8_t>(ex.pixels));
    rep.roi = roi;
    rep.label = label;
    reports.push_back(rep);
    std::printf("%s\n", pm::format_stats_tsv(rep, precision == "full").c_str());
    if (!output.empty())
      pm::write_image(ex.masked, masked_output_path(output, label, rois.size() > 1));
  }

  if (reports.size() == 2) {
    const pm::ReportDelta d = pm::compare_reports(reports[0], reports[1]);
    std::fprintf(stderr, "[delta] mean %+.3e  variance %+.3e  std-dev %+.3e\n", d.d_mean,
                 d.d_variance, d.d_std_dev);
  }
  return kExitOk;
}

int cmd_compare(const std::string& input, const std::string& pipeline_text,
                const CommonOpts& opts) {
  const pm::PipelineConfig cfg = make_config(opts);
  const std::optional<pm::Kernel> custom = make_custom(opts);
  const pm::PipelineSpec spec =
      pm::parse_pipeline(pipeline_text, cfg, custom ? &*custom : nullptr);
  if (spec.stages.size() != 1 || std::holds_alternative<pm::ThresholdStage>(spec.stages[0]))
    throw pm::Error("compare needs a single filter stage, got '" + pipeline_text + "'");

  const pm::GrayImage img = load_gray(input);
  const pm::GrayImage streamed = pm::run_pipeline(img, spec);

  pm::GrayImage reference;
  int tolerance = 0;
  if (const auto* f = std::get_if<pm::FilterStage>(&spec.stages[0])) {
    reference = pm::reference_filter(img, f->op, f->mode == pm::MagnitudeMode::AbsSum,
                                     cfg.padding, cfg.roberts_gy);
    // rational-coefficient masks may differ by one grid step after rounding
    for (pm::GradientPath path : {pm::GradientPath::Gx, pm::GradientPath::Gy,
                                  pm::GradientPath::Single}) {
      try {
        const pm::Kernel k = pm::kernel_for(f->op, path, cfg.roberts_gy);
        for (int i = 0; i < k.tap_count(); ++i)
          if (!k.coeffs[i].is_integer()) tolerance = 1;
      } catch (const pm::InvalidCombination&) {
      }
    }
    if (f->op == pm::OperatorKind::LoG) tolerance = 1;
  } else {
    const pm::Kernel& k = std::get<pm::CustomStage>(spec.stages[0]).kernel;
    reference = pm::reference_filter(img, k, cfg.padding);
    for (int i = 0; i < k.tap_count(); ++i)
      if (!k.coeffs[i].is_integer()) tolerance = 1;
  }

  const pm::FrameDiff d = pm::compare_frames(streamed, reference);
  if (d.identical)
    std::printf("%g\t%g\tidentical\n", d.max_abs_diff, d.mean_abs_diff);
  else
    std::printf("%g\t%g\t%.2f\n", d.max_abs_diff, d.mean_abs_diff, d.psnr);
  std::fprintf(stderr, "[compare] tolerance %d, max diff %g\n", tolerance, d.max_abs_diff);
  return d.max_abs_diff <= tolerance ? kExitOk : kExitDiff;
}

int cmd_kernels() {
  for (pm::OperatorKind kind :
       {pm::OperatorKind::Roberts, pm::OperatorKind::Prewitt, pm::OperatorKind::Sobel,
        pm::OperatorKind::Scharr, pm::OperatorKind::Laplacian, pm::OperatorKind::LoG,
        pm::OperatorKind::GaussianBlur, pm::OperatorKind::Sharpen}) {
    std::printf("%s%s\n", std::string(pm::operator_name(kind)).c_str(),
                pm::is_dual_path(kind) ? " (gx/gy pair)" : "");
    if (kind == pm::OperatorKind::LoG) {
      std::printf("  cascade: gauss then laplacian\n\n");
      continue;
    }
    const auto paths = pm::is_dual_path(kind)
                           ? std::vector<pm::GradientPath>{pm::GradientPath::Gx,
                                                           pm::GradientPath::Gy}
                           : std::vector<pm::GradientPath>{pm::GradientPath::Single};
    for (pm::GradientPath path : paths) {
      const pm::Kernel k = pm::kernel_for(kind, path);
      std::printf("  %s (sum %s):\n", k.name.c_str(), pm::kernel_sum(k).to_string().c_str());
      for (int i = 0; i < k.size; ++i) {
        std::printf("   ");
        for (int j = 0; j < k.size; ++j) std::printf(" %6s", k.at(i, j).to_string().c_str());
        std::printf("\n");
      }
    }
    std::printf("\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pixelmill: streaming fixed-point image filters with a reference comparator"};
  app.require_subcommand(1);

  // filter
  auto* filter = app.add_subcommand("filter", "Run a stage pipeline over an image");
  std::string f_input, f_pipeline, f_output;
  CommonOpts f_opts;
  filter->add_option("input", f_input, "Input image (PGM/PPM)")->required();
  filter->add_option("-p,--pipeline", f_pipeline,
                     "Stages, e.g. gauss,sobel:abs,thresh=80,sharpen");
  filter->add_option("-o,--output", f_output, "Output PGM path")->required();
  add_common(filter, f_opts);

  // detect
  auto* detect = app.add_subcommand("detect", "Edge detection: one operator plus optional threshold");
  std::string d_input, d_op, d_mode = "exact", d_output;
  int d_thresh = -1;
  CommonOpts d_opts;
  detect->add_option("input", d_input, "Input image (PGM/PPM)")->required();
  detect->add_option("--op", d_op, "roberts|prewitt|sobel|scharr|laplacian|log")->required();
  detect->add_option("--mode", d_mode, "Magnitude: exact|abs")
      ->check(CLI::IsMember({"exact", "abs"}));
  detect->add_option("--thresh", d_thresh, "Binary threshold 0..255 applied after the operator")
      ->check(CLI::Range(0, 255));
  detect->add_option("-o,--output", d_output, "Output PGM path")->required();
  add_common(detect, d_opts);

  // stats
  auto* stats = app.add_subcommand("stats", "ROI statistics (TSV: label mean variance stddev n)");
  std::string s_input, s_output, s_precision = "short";
  std::vector<std::string> s_rois;
  stats->add_option("input", s_input, "Input image (PGM/PPM)")->required();
  stats->add_option("--roi", s_rois,
                    "[label=]rect:x,y,w,h or [label=]ellipse:cx,cy,rx,ry (repeatable)")
      ->required();
  stats->add_option("-o,--output", s_output, "Masked ROI image path (label-suffixed when several)");
  stats->add_option("--precision", s_precision, "short (3 significant digits) or full")
      ->check(CLI::IsMember({"short", "full"}));

  // compare
  auto* compare =
      app.add_subcommand("compare", "Streaming fixed-point path vs the floating-point reference");
  std::string c_input, c_pipeline;
  CommonOpts c_opts;
  compare->add_option("input", c_input, "Input image (PGM/PPM)")->required();
  compare->add_option("-p,--pipeline", c_pipeline, "A single filter stage, e.g. sobel or gauss")
      ->required();
  add_common(compare, c_opts);

  // kernels
  app.add_subcommand("kernels", "Print the mask catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (filter->parsed()) return cmd_filter(f_input, f_pipeline, f_output, f_opts);
    if (detect->parsed()) return cmd_detect(d_input, d_op, d_mode, d_thresh, d_output, d_opts);
    if (stats->parsed()) return cmd_stats(s_input, s_rois, s_output, s_precision);
    if (compare->parsed()) return cmd_compare(c_input, c_pipeline, c_opts);
    return cmd_kernels();
  } catch (const pm::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadSpec;
  } catch (const pm::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const pm::FormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const pm::EmptyRoi& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadRoi;
  } catch (const pm::TooFewPixels& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadRoi;
  } catch (const pm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadArgs;
  }
}
