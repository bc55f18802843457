// SPDX-License-Identifier: Apache-2.0
#include "pixelmill/fixed.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

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

// A rounded integer q = (-1)^neg * mag * 2^lshift awaiting range handling.
struct RoundedInt {
  uint128 mag = 0;
  bool neg = false;
  int lshift = 0;
};

// round(m / d) on magnitudes; floor-toward-minus-infinity for Truncate,
// ties away from zero for RoundNearest. d > 0.
RoundedInt round_ratio(uint128 m, uint128 d, bool neg, Quantization q) {
  uint128 r = m / d;
  uint128 rem = m % d;
  if (q == Quantization::Truncate) {
    if (neg && rem != 0) r += 1;  // floor(-m/d) = -ceil(m/d)
  } else {
    if (rem >= d - rem) r += 1;  // 2*rem >= d, without overflowing
  }
  return {r, neg && r != 0, 0};
}

int64_t encode_bits(int128 value) {
  return static_cast<int64_t>(static_cast<uint64_t>(static_cast<uint128>(value)));
}

FixedValue apply_overflow(const RoundedInt& v, const FixedFormat& fmt) {
  FixedValue out;
  out.format = fmt;
  if (fmt.overflow == Overflow::Saturate) {
    const int128 lo = fmt.min_int();
    const int128 hi = fmt.max_int();
    int128 x;
    if (v.mag == 0) {
      x = 0;
    } else if (bit_width_u128(v.mag) + v.lshift > 66) {
      // magnitude beyond any 64-bit format
      x = v.neg ? lo : hi;
    } else {
      x = static_cast<int128>(v.mag) << v.lshift;
      if (v.neg) x = -x;
      if (x < lo) x = lo;
      if (x > hi) x = hi;
    }
    out.raw = encode_bits(x);
  } else {
    uint64_t bits = static_cast<uint64_t>(v.mag);
    bits = v.lshift >= 64 ? 0 : bits << v.lshift;
    if (v.neg) bits = ~bits + 1;
    if (fmt.total_bits < 64) {
      const uint64_t mask = (uint64_t{1} << fmt.total_bits) - 1;
      bits &= mask;
      if (fmt.is_signed && (bits >> (fmt.total_bits - 1)) != 0) bits |= ~mask;
    }
    out.raw = static_cast<int64_t>(bits);
  }
  return out;
}

}  // namespace

bool FixedFormat::valid() const noexcept {
  if (total_bits < 1 || total_bits > 64) return false;
  const int max_frac = is_signed ? total_bits - 1 : total_bits;
  return fraction_bits >= 0 && fraction_bits <= max_frac;
}

int128 FixedFormat::min_int() const noexcept {
  return is_signed ? -(int128{1} << (total_bits - 1)) : 0;
}

int128 FixedFormat::max_int() const noexcept {
  if (is_signed) return (int128{1} << (total_bits - 1)) - 1;
  return static_cast<int128>((uint128{1} << total_bits) - 1);
}

double FixedFormat::min_value() const noexcept {
  return std::ldexp(static_cast<double>(min_int()), -fraction_bits);
}

double FixedFormat::max_value() const noexcept {
  return std::ldexp(static_cast<double>(max_int()), -fraction_bits);
}

double FixedFormat::step() const noexcept { return std::ldexp(1.0, -fraction_bits); }

std::string FixedFormat::to_string() const {
  std::string s;
  s += is_signed ? 's' : 'u';
  s += std::to_string(total_bits);
  s += '.';
  s += std::to_string(fraction_bits);
  s += overflow == Overflow::Wrap ? ":wrap" : ":sat";
  s += quantization == Quantization::RoundNearest ? ":round" : ":trunc";
  return s;
}

FixedFormat FixedFormat::parse(std::string_view text) {
  std::string t;
  t.reserve(text.size());
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  auto fail = [&](const std::string& why) -> FixedFormat {
    throw ParseError("bad fixed-point format '" + std::string(text) + "': " + why);
  };

  size_t pos = 0;
  FixedFormat fmt;
  if (pos >= t.size() || (t[pos] != 'u' && t[pos] != 's')) fail("expected leading 'u' or 's'");
  fmt.is_signed = t[pos] == 's';
  ++pos;

  auto read_int = [&](const char* what) -> int {
    size_t start = pos;
    long v = 0;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      v = v * 10 + (t[pos] - '0');
      if (v > 1000) fail(std::string(what) + " out of range");
      ++pos;
    }
    if (pos == start) fail(std::string("missing ") + what);
    return static_cast<int>(v);
  };

  fmt.total_bits = read_int("total bits");
  if (pos >= t.size() || t[pos] != '.') fail("expected '.' between total and fraction bits");
  ++pos;
  fmt.fraction_bits = read_int("fraction bits");

  while (pos < t.size()) {
    if (t[pos] != ':') fail("unexpected character '" + std::string(1, t[pos]) + "'");
    ++pos;
    size_t end = t.find(':', pos);
    std::string word = t.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (word == "wrap")
      fmt.overflow = Overflow::Wrap;
    else if (word == "sat")
      fmt.overflow = Overflow::Saturate;
    else if (word == "trunc")
      fmt.quantization = Quantization::Truncate;
    else if (word == "round")
      fmt.quantization = Quantization::RoundNearest;
    else
      fail("unknown suffix ':" + word + "'");
    pos += word.size();
  }

  if (!fmt.valid()) fail("bit counts out of range");
  return fmt;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ParseError("bad rational '" + std::string(text) + "'");
  };
  if (text.empty()) fail();

  size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') {
    neg = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](long long& out) -> int {
    int n = 0;
    out = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (n >= 18) fail();
      out = out * 10 + (text[pos] - '0');
      ++n;
      ++pos;
    }
    return n;
  };

  long long whole = 0;
  if (digits(whole) == 0) fail();

  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    long long d = 0;
    if (digits(d) == 0 || pos != text.size() || d == 0) fail();
    return Rational(neg ? -whole : whole, d);
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    long long frac = 0;
    size_t start = pos;
    if (digits(frac) == 0) fail();
    if (pos != text.size()) fail();
    long long scale = 1;
    for (size_t i = start; i < pos; ++i) scale *= 10;
    const long long n = whole * scale + frac;
    return Rational(neg ? -n : n, scale);
  }
  if (pos != text.size()) fail();
  return Rational(neg ? -whole : whole);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}

int128 FixedValue::raw_int() const noexcept {
  if (format.is_signed) return raw;
  return static_cast<int128>(static_cast<uint64_t>(raw));
}

double FixedValue::value() const noexcept {
  return std::ldexp(static_cast<double>(raw_int()), -format.fraction_bits);
}

FixedValue quantize_scaled(int128 mant, int exp2, const FixedFormat& fmt) {
  if (!fmt.valid()) throw Error("invalid fixed-point format");
  const long shift = static_cast<long>(exp2) + fmt.fraction_bits;
  RoundedInt r;
  if (mant == 0) {
    r = {0, false, 0};
  } else if (shift >= 0) {
    r = {umag(mant), mant < 0, static_cast<int>(shift)};
  } else {
    const long s = -shift;
    const uint128 m = umag(mant);
    if (s >= 128) {
      // |x| <= 2^127 * 2^-128; only an exact half is possible, at s == 128.
      const bool half_up = fmt.quantization == Quantization::RoundNearest && s == 128 &&
                           m == (uint128{1} << 127);
      const bool floor_down = fmt.quantization == Quantization::Truncate && mant < 0;
      r = {(half_up || floor_down) ? uint128{1} : uint128{0}, mant < 0, 0};
      if (r.mag == 0) r.neg = false;
    } else {
      r = round_ratio(m, uint128{1} << s, mant < 0, fmt.quantization);
    }
  }
  return apply_overflow(r, fmt);
}

FixedValue quantize(const Rational& x, const FixedFormat& fmt) {
  if (!fmt.valid()) throw Error("invalid fixed-point format");
  // round(num * 2^f / den)
  const uint128 m = umag(static_cast<int128>(x.num)) << fmt.fraction_bits;
  RoundedInt r = round_ratio(m, static_cast<uint128>(x.den), x.num < 0, fmt.quantization);
  return apply_overflow(r, fmt);
}

FixedValue quantize(double x, const FixedFormat& fmt) {
  if (!std::isfinite(x)) throw Error("cannot quantize a non-finite value");
  if (x == 0.0) return quantize_scaled(0, 0, fmt);
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  const auto mant = static_cast<int128>(static_cast<long long>(std::ldexp(m, 53)));
  return quantize_scaled(mant, e - 53, fmt);
}

namespace {

// Aligned operand as an int128, rejecting combinations that could not be
// held exactly.
int128 load_shifted(const FixedValue& v, int up_shift) {
  const int128 i = v.raw_int();
  if (i == 0) return 0;
  if (bit_width_u128(umag(i)) + up_shift > 126)
    throw Error("operand formats too wide to combine exactly");
  return i << up_shift;
}

}  // namespace

FixedValue add(const FixedValue& a, const FixedValue& b, const FixedFormat& out_fmt) {
  const int fa = a.format.fraction_bits;
  const int fb = b.format.fraction_bits;
  const int f = fa > fb ? fa : fb;
  const int128 sum = load_shifted(a, f - fa) + load_shifted(b, f - fb);
  return quantize_scaled(sum, -f, out_fmt);
}

FixedValue mul(const FixedValue& a, const FixedValue& b, const FixedFormat& out_fmt) {
  const int128 ia = a.raw_int();
  const int128 ib = b.raw_int();
  if (ia != 0 && ib != 0 &&
      bit_width_u128(umag(ia)) + bit_width_u128(umag(ib)) > 126)
    throw Error("operand formats too wide to combine exactly");
  return quantize_scaled(ia * ib, -(a.format.fraction_bits + b.format.fraction_bits), out_fmt);
}

}  // namespace pixelmill
