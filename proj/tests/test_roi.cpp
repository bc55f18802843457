// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "pixelmill/roi.hpp"

using namespace pixelmill;

namespace {

GrayImage ramp_image(int w, int h) {
  GrayImage img(w, h);
  for (size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<uint8_t>(i % 251);
  return img;
}

}  // namespace

TEST_CASE("roi parsing") {
  const RoiSpec r = RoiSpec::parse("rect:2,3,10,4");
  CHECK(r == RoiSpec{RectRoi{2, 3, 10, 4}});
  const RoiSpec e = RoiSpec::parse("ellipse:16,16,5,3");
  CHECK(e == RoiSpec{EllipseRoi{16, 16, 5, 3}});

  CHECK(RoiSpec::parse(r.to_string()) == r);
  CHECK(RoiSpec::parse(e.to_string()) == e);

  CHECK_THROWS_AS(RoiSpec::parse("blob:1,2,3,4"), ParseError);
  CHECK_THROWS_AS(RoiSpec::parse("rect:1,2,3"), ParseError);
  CHECK_THROWS_AS(RoiSpec::parse("rect:1,2,0,4"), ParseError);
  CHECK_THROWS_AS(RoiSpec::parse("ellipse:1,2,3,0"), ParseError);
  CHECK_THROWS_AS(RoiSpec::parse("rect:1,2,x,4"), ParseError);
}

TEST_CASE("whole-frame rect extracts everything") {
  const GrayImage img = ramp_image(6, 4);
  const RoiExtract ex = extract_roi(img, RoiSpec{RectRoi{0, 0, 6, 4}});
  CHECK(ex.masked == img);
  CHECK(ex.pixels == img.pixels);
}

TEST_CASE("single-pixel rect") {
  const GrayImage img = ramp_image(6, 4);
  const RoiExtract ex = extract_roi(img, RoiSpec{RectRoi{0, 0, 1, 1}});
  CHECK(ex.pixels == std::vector<uint8_t>{img.at(0, 0)});
  int nonzero = 0;
  for (uint8_t p : ex.masked.pixels) nonzero += p != 0;
  CHECK(nonzero <= 1);
}

TEST_CASE("unit-radius ellipse covers the center plus axis neighbors") {
  GrayImage img(3, 3);
  for (int i = 0; i < 9; ++i) img.pixels[i] = static_cast<uint8_t>(10 + i);
  const RoiExtract ex = extract_roi(img, RoiSpec{EllipseRoi{1, 1, 1, 1}});
  // membership (c-1)^2 + (r-1)^2 <= 1 holds for 5 of the 9 pixel centers
  CHECK(ex.pixels == std::vector<uint8_t>{11, 13, 14, 15, 17});
  CHECK(ex.masked.at(0, 0) == 0);
  CHECK(ex.masked.at(1, 1) == 14);
}

TEST_CASE("roi off the frame is empty") {
  const GrayImage img = ramp_image(4, 4);
  CHECK_THROWS_AS(extract_roi(img, RoiSpec{RectRoi{10, 10, 3, 3}}), EmptyRoi);
  CHECK_THROWS_AS(extract_roi(img, RoiSpec{EllipseRoi{-10, -10, 2, 2}}), EmptyRoi);
  // partial overlap is fine
  CHECK_NOTHROW(extract_roi(img, RoiSpec{RectRoi{3, 3, 10, 10}}));
}

TEST_CASE("stats of a small normalized list") {
  const std::array<double, 4> u{0.0, 1.0, 1.0, 0.0};
  const StatsReport rep = compute_stats(std::span<const double>(u));
  CHECK(rep.mean == 0.5);
  CHECK(rep.variance == doctest::Approx(1.0 / 3.0));
  CHECK(rep.std_dev == doctest::Approx(std::sqrt(1.0 / 3.0)));
  CHECK(rep.pixel_count == 4);
}

TEST_CASE("constant list degenerates to zero spread") {
  const std::vector<uint8_t> pix(100, 128);
  const StatsReport rep = compute_stats(std::span<const uint8_t>(pix));
  CHECK(rep.mean == doctest::Approx(128.0 / 255.0));
  CHECK(rep.std_dev == 0.0);
  CHECK(rep.variance == 0.0);
}

TEST_CASE("too few pixels") {
  const std::vector<uint8_t> one{42};
  CHECK_THROWS_AS(compute_stats(std::span<const uint8_t>(one)), TooFewPixels);
  const std::vector<double> zero;
  CHECK_THROWS_AS(compute_stats(std::span<const double>(zero)), TooFewPixels);
}

TEST_CASE("variance is std_dev squared by construction") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> px(0, 255);
  std::vector<uint8_t> pix(500);
  for (auto& p : pix) p = static_cast<uint8_t>(px(rng));
  const StatsReport rep = compute_stats(std::span<const uint8_t>(pix));
  CHECK(rep.variance == rep.std_dev * rep.std_dev);
}

TEST_CASE("adding a constant shifts the mean and keeps the spread") {
  std::mt19937 rng(73);
  std::uniform_int_distribution<int> px(0, 200);
  std::vector<uint8_t> pix(300);
  for (auto& p : pix) p = static_cast<uint8_t>(px(rng));
  std::vector<uint8_t> shifted(pix);
  for (auto& p : shifted) p = static_cast<uint8_t>(p + 50);  // stays below 255

  const StatsReport a = compute_stats(std::span<const uint8_t>(pix));
  const StatsReport b = compute_stats(std::span<const uint8_t>(shifted));
  CHECK(b.mean == doctest::Approx(a.mean + 50.0 / 255.0));
  CHECK(b.std_dev == doctest::Approx(a.std_dev).epsilon(1e-12));
  CHECK(b.variance == doctest::Approx(a.variance).epsilon(1e-12));
}

TEST_CASE("permutation leaves the report unchanged") {
  std::mt19937 rng(79);
  std::uniform_int_distribution<int> px(0, 255);
  std::vector<uint8_t> pix(256);
  for (auto& p : pix) p = static_cast<uint8_t>(px(rng));
  const StatsReport a = compute_stats(std::span<const uint8_t>(pix));
  std::shuffle(pix.begin(), pix.end(), rng);
  const StatsReport b = compute_stats(std::span<const uint8_t>(pix));
  CHECK(a.mean == b.mean);
  CHECK(a.pixel_count == b.pixel_count);
  CHECK(a.std_dev == doctest::Approx(b.std_dev).epsilon(1e-14));
}

TEST_CASE("normal vs abnormal tissue rows: spread consistency") {
  // printed (mean, variance, std-dev) triples for paired tissue regions;
  // each row must satisfy variance = std_dev^2 up to 3-significant-digit
  // rounding of the published values
  struct Row {
    double mean, variance, std_dev;
  };
  const Row rows[] = {
      {3.18e-1, 3.08e-3, 5.55e-2}, {2.29e-1, 4.37e-3, 6.61e-2},
      {3.23e-1, 2.02e-3, 4.49e-2}, {2.25e-1, 5.17e-3, 7.19e-2},
      {4.10e-1, 4.05e-3, 6.36e-2}, {5.13e-1, 2.48e-2, 1.57e-1},
      {4.20e-1, 3.40e-3, 5.83e-2}, {5.13e-1, 1.60e-2, 1.26e-1},
      {3.91e-1, 3.15e-3, 5.62e-2}, {8.94e-1, 2.80e-2, 1.67e-1},
      {2.38e-1, 3.30e-3, 5.76e-2}, {6.17e-1, 4.90e-2, 2.21e-1},
  };
  for (const Row& row : rows) {
    const double sq = row.std_dev * row.std_dev;
    CHECK(std::abs(sq - row.variance) / row.variance < 0.02);
  }
  // the spot value: (5.55e-2)^2 = 3.080e-3
  CHECK(5.55e-2 * 5.55e-2 == doctest::Approx(3.08e-3).epsilon(0.01));
}

TEST_CASE("compare_reports") {
  StatsReport a;
  a.mean = 0.3;
  a.variance = 0.01;
  a.std_dev = 0.1;
  const ReportDelta same = compare_reports(a, a);
  CHECK(same.d_mean == 0.0);
  CHECK(same.mean_larger == Larger::Equal);

  StatsReport b = a;
  b.mean = 0.2;
  const ReportDelta d = compare_reports(a, b);
  CHECK(d.d_mean == doctest::Approx(0.1));
  CHECK(d.mean_larger == Larger::First);

  // abnormal mean dominating its paired normal region
  StatsReport normal, abnormal;
  normal.mean = 3.91e-1;
  abnormal.mean = 8.94e-1;
  CHECK(compare_reports(abnormal, normal).mean_larger == Larger::First);
}

TEST_CASE("tsv formatting") {
  StatsReport rep;
  rep.label = "normal";
  rep.mean = 128.0 / 255.0;
  rep.variance = 0.0;
  rep.std_dev = 0.0;
  rep.pixel_count = 1024;
  const std::string line = format_stats_tsv(rep);
  CHECK(line == "normal\t5.02e-01\t0.00e+00\t0.00e+00\t1024");
  const std::string full = format_stats_tsv(rep, true);
  CHECK(full.find("0.50196078431372548") != std::string::npos);
}
