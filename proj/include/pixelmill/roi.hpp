// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pixelmill/image.hpp"

namespace pixelmill {

struct RectRoi {
  long long x = 0, y = 0, w = 1, h = 1;
  friend bool operator==(const RectRoi&, const RectRoi&) = default;
};

struct EllipseRoi {
  long long cx = 0, cy = 0, rx = 1, ry = 1;
  friend bool operator==(const EllipseRoi&, const EllipseRoi&) = default;
};

/// Region geometry in pixel coordinates, origin top-left. Ellipse membership
/// is ((c-cx)/rx)^2 + ((r-cy)/ry)^2 <= 1 evaluated at pixel centers.
struct RoiSpec {
  std::variant<RectRoi, EllipseRoi> shape = RectRoi{};

  bool contains(long long row, long long col) const noexcept;

  std::string to_string() const;
  /// "rect:x,y,w,h" or "ellipse:cx,cy,rx,ry"; extents must be >= 1.
  static RoiSpec parse(std::string_view text);

  friend bool operator==(const RoiSpec&, const RoiSpec&) = default;
};

struct RoiExtract {
  GrayImage masked;             // input dimensions, outside-ROI pixels zeroed
  std::vector<uint8_t> pixels;  // in-ROI intensities, raster order
};

/// Throws EmptyRoi when the region does not intersect the frame.
RoiExtract extract_roi(const GrayImage& img, const RoiSpec& roi);

/// Textural statistics of a region: sample mean, standard deviation and
/// variance of the [0,1]-normalized intensities. variance == std_dev^2 by
/// construction; the standard deviation uses the (n-1) denominator.
struct StatsReport {
  double mean = 0.0;
  double std_dev = 0.0;
  double variance = 0.0;
  size_t pixel_count = 0;
  std::optional<RoiSpec> roi;
  std::string label;
};

/// Statistics over already-normalized unit-interval intensities.
/// Throws TooFewPixels when fewer than two samples are given.
StatsReport compute_stats(std::span<const double> unit_values);

/// Statistics over raw 8-bit intensities (normalized by 255 internally).
StatsReport compute_stats(std::span<const uint8_t> pixels);

enum class Larger { First, Second, Equal };

struct ReportDelta {
  double d_mean = 0.0;      // a.mean - b.mean
  double d_variance = 0.0;  // a.variance - b.variance
  double d_std_dev = 0.0;   // a.std_dev - b.std_dev
  Larger mean_larger = Larger::Equal;
  Larger variance_larger = Larger::Equal;
  Larger std_dev_larger = Larger::Equal;
};

ReportDelta compare_reports(const StatsReport& a, const StatsReport& b);

/// One tab-separated row: label, mean, variance, std_dev, pixel_count.
/// Default formatting is scientific with 3 significant digits; full keeps
/// every digit.
std::string format_stats_tsv(const StatsReport& report, bool full_precision = false);

}  // namespace pixelmill
