// SPDX-License-Identifier: Apache-2.0
#include "pixelmill/roi.hpp"

#include <cmath>
#include <cstdio>

namespace pixelmill {

bool RoiSpec::contains(long long row, long long col) const noexcept {
  if (const auto* r = std::get_if<RectRoi>(&shape))
    return col >= r->x && col < r->x + r->w && row >= r->y && row < r->y + r->h;
  const auto& e = std::get<EllipseRoi>(shape);
  // Integer-exact membership: ((c-cx)/rx)^2 + ((r-cy)/ry)^2 <= 1.
  const long long dc = col - e.cx;
  const long long dr = row - e.cy;
  return dc * dc * e.ry * e.ry + dr * dr * e.rx * e.rx <= e.rx * e.rx * e.ry * e.ry;
}

std::string RoiSpec::to_string() const {
  char buf[96];
  if (const auto* r = std::get_if<RectRoi>(&shape)) {
    std::snprintf(buf, sizeof buf, "rect:%lld,%lld,%lld,%lld", r->x, r->y, r->w, r->h);
  } else {
    const auto& e = std::get<EllipseRoi>(shape);
    std::snprintf(buf, sizeof buf, "ellipse:%lld,%lld,%lld,%lld", e.cx, e.cy, e.rx, e.ry);
  }
  return buf;
}

RoiSpec RoiSpec::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> RoiSpec {
    throw ParseError("bad ROI '" + std::string(text) + "': " + why);
  };

  const size_t colon = text.find(':');
  if (colon == std::string_view::npos) fail("expected 'rect:' or 'ellipse:' prefix");
  const std::string_view kind = text.substr(0, colon);
  std::string_view rest = text.substr(colon + 1);

  long long v[4];
  for (int i = 0; i < 4; ++i) {
    size_t end = rest.find(',');
    if (i < 3 && end == std::string_view::npos) fail("expected four comma-separated integers");
    if (i == 3) end = rest.size();
    const std::string tok(rest.substr(0, end));
    try {
      size_t used = 0;
      v[i] = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail("bad integer '" + tok + "'");
    }
    rest = i < 3 ? rest.substr(end + 1) : std::string_view{};
  }

  RoiSpec roi;
  if (kind == "rect") {
    if (v[2] < 1 || v[3] < 1) fail("width and height must be >= 1");
    roi.shape = RectRoi{v[0], v[1], v[2], v[3]};
  } else if (kind == "ellipse") {
    if (v[2] < 1 || v[3] < 1) fail("radii must be >= 1");
    roi.shape = EllipseRoi{v[0], v[1], v[2], v[3]};
  } else {
    fail("unknown shape '" + std::string(kind) + "'");
  }
  return roi;
}

RoiExtract extract_roi(const GrayImage& img, const RoiSpec& roi) {
  RoiExtract out;
  out.masked = GrayImage(img.width, img.height, 0);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      if (roi.contains(r, c)) {
        out.masked.at(r, c) = img.at(r, c);
        out.pixels.push_back(img.at(r, c));
      }
    }
  }
  if (out.pixels.empty()) throw EmptyRoi("ROI " + roi.to_string() + " misses the frame entirely");
  return out;
}

StatsReport compute_stats(std::span<const double> unit_values) {
  const size_t n = unit_values.size();
  if (n < 2)
    throw TooFewPixels("statistics need at least 2 pixels, got " + std::to_string(n));

  // Anchor sums at the first sample so a constant list degenerates to a
  // spread of exactly zero.
  const double offset = unit_values[0];
  double sum = 0.0;
  for (double u : unit_values) sum += u - offset;
  const double mean_rel = sum / static_cast<double>(n);

  double sq = 0.0;
  for (double u : unit_values) {
    const double d = (u - offset) - mean_rel;
    sq += d * d;
  }
  StatsReport rep;
  rep.pixel_count = n;
  rep.mean = offset + mean_rel;
  rep.std_dev = std::sqrt(sq / static_cast<double>(n - 1));
  rep.variance = rep.std_dev * rep.std_dev;
  return rep;
}

StatsReport compute_stats(std::span<const uint8_t> pixels) {
  const size_t n = pixels.size();
  if (n < 2)
    throw TooFewPixels("statistics need at least 2 pixels, got " + std::to_string(n));

  // 8-bit intensities allow exact integer moments: the spread term
  // n*sum(k^2) - (sum k)^2 cancels exactly for constant or shifted lists,
  // and every permutation gives the identical report.
  int128 s1 = 0;
  int128 s2 = 0;
  for (uint8_t p : pixels) {
    s1 += p;
    s2 += static_cast<int128>(p) * p;
  }
  const auto nn = static_cast<int128>(n);
  const int128 spread = nn * s2 - s1 * s1;  // 255^2 * n * sum((u - mean)^2)

  StatsReport rep;
  rep.pixel_count = n;
  rep.mean = static_cast<double>(s1) / (255.0 * static_cast<double>(n));
  rep.std_dev = std::sqrt(static_cast<double>(spread) /
                          (65025.0 * static_cast<double>(n) * static_cast<double>(n - 1)));
  rep.variance = rep.std_dev * rep.std_dev;
  return rep;
}

namespace {

Larger which_larger(double a, double b) {
  if (a > b) return Larger::First;
  if (b > a) return Larger::Second;
  return Larger::Equal;
}

}  // namespace

ReportDelta compare_reports(const StatsReport& a, const StatsReport& b) {
  ReportDelta d;
  d.d_mean = a.mean - b.mean;
  d.d_variance = a.variance - b.variance;
  d.d_std_dev = a.std_dev - b.std_dev;
  d.mean_larger = which_larger(a.mean, b.mean);
  d.variance_larger = which_larger(a.variance, b.variance);
  d.std_dev_larger = which_larger(a.std_dev, b.std_dev);
  return d;
}

std::string format_stats_tsv(const StatsReport& report, bool full_precision) {
  char buf[256];
  if (full_precision) {
    std::snprintf(buf, sizeof buf, "%s\t%.17g\t%.17g\t%.17g\t%zu", report.label.c_str(),
                  report.mean, report.variance, report.std_dev, report.pixel_count);
  } else {
    std::snprintf(buf, sizeof buf, "%s\t%.2e\t%.2e\t%.2e\t%zu", report.label.c_str(), report.mean,
                  report.variance, report.std_dev, report.pixel_count);
  }
  return buf;
}

}  // namespace pixelmill
