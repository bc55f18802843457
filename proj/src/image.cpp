// SPDX-License-Identifier: Apache-2.0
#include "pixelmill/image.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>

namespace pixelmill {

namespace {

struct PnmParser {
  const std::vector<uint8_t>& data;
  size_t pos = 0;
  const std::filesystem::path& path;

  [[noreturn]] void fail(const std::string& why, size_t at) const {
    throw FormatError(path.string() + ": " + why + " at byte offset " + std::to_string(at));
  }

  bool eof() const { return pos >= data.size(); }

  // Whitespace and '#' comments between header tokens.
  void skip_separators() {
    while (!eof()) {
      const uint8_t c = data[pos];
      if (std::isspace(c)) {
        ++pos;
      } else if (c == '#') {
        while (!eof() && data[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  long read_number(const char* what, long max) {
    skip_separators();
    const size_t start = pos;
    if (eof() || !std::isdigit(data[pos])) fail(std::string("expected ") + what, pos);
    long v = 0;
    while (!eof() && std::isdigit(data[pos])) {
      v = v * 10 + (data[pos] - '0');
      if (v > max) fail(std::string(what) + " out of range", start);
      ++pos;
    }
    return v;
  }
};

std::vector<uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return data;
}

}  // namespace

AnyImage read_image(const std::filesystem::path& path) {
  const std::vector<uint8_t> data = slurp(path);
  PnmParser p{data, 0, path};

  if (data.size() < 2 || data[0] != 'P') p.fail("bad magic (not a PNM file)", 0);
  const char kind = static_cast<char>(data[1]);
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
    p.fail(std::string("unsupported PNM type 'P") + kind + "'", 1);
  p.pos = 2;

  const bool color = kind == '3' || kind == '6';
  const bool binary = kind == '5' || kind == '6';
  const long width = p.read_number("width", 1 << 20);
  const long height = p.read_number("height", 1 << 20);
  if (width < 1 || height < 1) p.fail("zero image dimension", p.pos);
  const size_t maxval_at = p.pos;
  const long maxval = p.read_number("maxval", 1 << 20);
  if (maxval != 255) p.fail("maxval must be 255, got " + std::to_string(maxval), maxval_at);

  const size_t nsamples = static_cast<size_t>(width) * height * (color ? 3 : 1);
  std::vector<uint8_t> samples;
  samples.reserve(nsamples);

  if (binary) {
    // Exactly one whitespace byte separates the maxval from the payload.
    if (p.eof() || !std::isspace(data[p.pos]))
      p.fail("expected single whitespace before binary payload", p.pos);
    ++p.pos;
    if (data.size() - p.pos < nsamples)
      p.fail("truncated payload: need " + std::to_string(nsamples) + " bytes, have " +
                 std::to_string(data.size() - p.pos),
             p.pos);
    samples.assign(data.begin() + p.pos, data.begin() + p.pos + nsamples);
  } else {
    for (size_t i = 0; i < nsamples; ++i) {
      const size_t at = p.pos;
      const long v = p.read_number("sample", 1 << 20);
      if (v > maxval) p.fail("sample exceeds maxval", at);
      samples.push_back(static_cast<uint8_t>(v));
    }
  }

  if (!color) {
    GrayImage img(static_cast<int>(width), static_cast<int>(height));
    img.pixels = std::move(samples);
    return img;
  }
  RgbImage img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.pixels.resize(static_cast<size_t>(width) * height);
  for (size_t i = 0; i < img.pixels.size(); ++i)
    img.pixels[i] = {samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
  return img;
}

GrayImage rgb_to_gray(const RgbImage& img) {
  GrayImage out(img.width, img.height);
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    const Rgb& p = img.pixels[i];
    // Integer-exact BT.601 with round-half-away (sum is non-negative).
    const long y = (299L * p.r + 587L * p.g + 114L * p.b + 500) / 1000;
    out.pixels[i] = static_cast<uint8_t>(y > 255 ? 255 : y);
  }
  return out;
}

GrayImage to_gray(const AnyImage& img) {
  if (const auto* gray = std::get_if<GrayImage>(&img)) return *gray;
  return rgb_to_gray(std::get<RgbImage>(img));
}

void write_image(const GrayImage& img, const std::filesystem::path& path) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<size_t>(img.width) * img.height)
    throw Error("refusing to write malformed image");

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write failure on '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

RealFrame normalize(const GrayImage& img) {
  RealFrame out(img.width, img.height);
  for (size_t i = 0; i < img.pixels.size(); ++i) out.values[i] = img.pixels[i] / 255.0;
  return out;
}

}  // namespace pixelmill
