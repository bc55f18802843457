// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "doctest.h"
#include "pixelmill/fixed.hpp"

using namespace pixelmill;

namespace {

FixedFormat fmt(int total, int frac, bool sgn, Overflow o = Overflow::Saturate,
                Quantization q = Quantization::Truncate) {
  return FixedFormat{total, frac, sgn, o, q};
}

// Reference quantizer over an exact rational num/den, computed with plain
// integer arithmetic and independent of the library's wide-integer path.
long long ref_grid_round(long long num, long long den, int frac, Quantization q) {
  // scaled = num * 2^frac / den
  const long long snum = num * (1LL << frac);
  const long long quot = snum / den;
  const long long rem = snum % den;
  if (q == Quantization::Truncate) {
    if (rem != 0 && ((snum < 0) != (den < 0))) return quot - 1;  // floor
    return quot;
  }
  // nearest, ties away from zero
  const long long mag = std::llabs(snum);
  const long long dmag = std::llabs(den);
  long long r = (2 * mag + dmag) / (2 * dmag);
  return snum < 0 ? -r : r;
}

}  // namespace

TEST_CASE("format parsing and canonical text") {
  const FixedFormat a = FixedFormat::parse("u8.4");
  CHECK(a.total_bits == 8);
  CHECK(a.fraction_bits == 4);
  CHECK_FALSE(a.is_signed);
  CHECK(a.overflow == Overflow::Saturate);
  CHECK(a.quantization == Quantization::Truncate);

  const FixedFormat b = FixedFormat::parse("S18.8:SAT:Round");
  CHECK(b.is_signed);
  CHECK(b.total_bits == 18);
  CHECK(b.quantization == Quantization::RoundNearest);
  CHECK(b.to_string() == "s18.8:sat:round");

  CHECK(FixedFormat::parse("u8.0:round:wrap").overflow == Overflow::Wrap);

  CHECK_THROWS_AS(FixedFormat::parse("x8.4"), ParseError);
  CHECK_THROWS_AS(FixedFormat::parse("u8"), ParseError);
  CHECK_THROWS_AS(FixedFormat::parse("u8.4:bogus"), ParseError);
  CHECK_THROWS_AS(FixedFormat::parse("u0.0"), ParseError);
  CHECK_THROWS_AS(FixedFormat::parse("u65.0"), ParseError);
  CHECK_THROWS_AS(FixedFormat::parse("s8.8"), ParseError);  // signed needs the sign bit
  CHECK(FixedFormat::parse("u8.8").valid());
}

TEST_CASE("format ranges") {
  CHECK(fmt(8, 0, false).max_int() == 255);
  CHECK(fmt(8, 0, false).min_int() == 0);
  CHECK(fmt(8, 4, true).max_int() == 127);
  CHECK(fmt(8, 4, true).min_int() == -128);
  CHECK(fmt(8, 4, false).step() == doctest::Approx(1.0 / 16));
  CHECK(fmt(64, 0, false).max_int() == (int128{1} << 64) - 1);
}

TEST_CASE("quantize: truncation, saturation, wrap") {
  // floor(1.3 * 16) = 20
  const FixedValue a = quantize(Rational(13, 10), fmt(8, 4, false));
  CHECK(a.raw == 20);
  CHECK(a.value() == doctest::Approx(1.25));

  CHECK(quantize(Rational(256), fmt(8, 0, false)).raw == 255);  // saturate
  CHECK(quantize(Rational(256), fmt(8, 0, false, Overflow::Wrap)).raw == 0);
  CHECK(quantize(Rational(257), fmt(8, 0, false, Overflow::Wrap)).raw == 1);
  CHECK(quantize(Rational(-1), fmt(8, 0, false)).raw == 0);

  // the double overload quantizes the double's exact value
  CHECK(quantize(1.3, fmt(8, 4, false)).raw == 20);
  CHECK(quantize(-0.5, fmt(8, 4, true)).raw == -8);
}

TEST_CASE("round-nearest ties away from zero") {
  const FixedFormat f = fmt(8, 1, true, Overflow::Saturate, Quantization::RoundNearest);
  CHECK(quantize(Rational(5, 4), f).raw == 3);    // 1.25 -> 2.5 halves -> 3 (tie away)
  CHECK(quantize(Rational(-5, 4), f).raw == -3);  // -1.25 -> -3
  CHECK(quantize(Rational(9, 8), f).raw == 2);    // 1.125 -> 2.25 -> 2
}

TEST_CASE("signed truncation floors toward negative infinity") {
  const FixedFormat f = fmt(8, 2, true);
  CHECK(quantize(Rational(-11, 10), f).raw == -5);  // -1.1*4 = -4.4 -> -5
  CHECK(quantize(Rational(11, 10), f).raw == 4);
}

TEST_CASE("add examples") {
  const FixedFormat u8 = fmt(8, 0, false);
  const FixedFormat u84 = fmt(8, 4, false);

  const FixedValue x = quantize(Rational(37), u8);
  CHECK(add(quantize(Rational(0), u8), x, u8) == x);

  CHECK(add(quantize(Rational(200), u8), quantize(Rational(100), u8), u8).raw == 255);

  const FixedValue q = quantize(Rational(5, 4), u84);  // 1.25
  const FixedValue s = add(q, q, u84);
  CHECK(s.value() == doctest::Approx(2.5));
  CHECK(s.raw == 40);
}

TEST_CASE("mul examples") {
  const FixedFormat u84 = fmt(8, 4, false);
  const FixedValue x = quantize(Rational(21, 4), fmt(12, 4, false));  // 5.25
  CHECK(mul(x, quantize(Rational(1), fmt(4, 0, false)), fmt(12, 4, false)) == x);

  CHECK(mul(quantize(0.5, u84), quantize(0.5, u84), u84).value() == doctest::Approx(0.25));

  // 0.1875^2 = 9/256, below one grid step of u8.4, so truncation kills it.
  const FixedValue t = quantize(Rational(3, 16), u84);
  CHECK(t.raw == 3);
  const FixedValue p = mul(t, t, u84);
  CHECK(p.raw == 0);
  // independent check: 3*3 = 9 at 2^-8; 9 * 16 / 256 = 0 by integer floor
  CHECK(ref_grid_round(9, 256, 4, Quantization::Truncate) == 0);
}

TEST_CASE("quantization error bounds (sampled)") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long long> num_dist(-100000, 100000);
  std::uniform_int_distribution<long long> den_dist(1, 997);
  for (int tb : {4, 6, 8, 12}) {
    for (int fb = 0; fb < tb; ++fb) {
      for (bool sgn : {false, true}) {
        for (int iter = 0; iter < 200; ++iter) {
          const long long num = num_dist(rng);
          const long long den = den_dist(rng);
          const double x = double(num) / double(den);
          const FixedFormat tf = fmt(tb, fb, sgn);
          if (x < tf.min_value() || x > tf.max_value()) continue;

          const double step = tf.step();
          const double tr = quantize(Rational(num, den), tf).value();
          CHECK(x - tr >= 0.0);
          CHECK(x - tr < step);

          FixedFormat rf = tf;
          rf.quantization = Quantization::RoundNearest;
          const double rn = quantize(Rational(num, den), rf).value();
          CHECK(std::abs(x - rn) <= step / 2 + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("saturation stays in range, wrap is modular") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long long> dist(-5000, 5000);
  for (int iter = 0; iter < 2000; ++iter) {
    const long long num = dist(rng);
    const FixedFormat sf = fmt(6, 2, true);
    const FixedValue sat = quantize(Rational(num, 7), sf);
    CHECK(sat.raw >= -32);
    CHECK(sat.raw <= 31);

    FixedFormat wf = sf;
    wf.overflow = Overflow::Wrap;
    const FixedValue wr = quantize(Rational(num, 7), wf);
    const long long grid = ref_grid_round(num, 7, 2, Quantization::Truncate);
    long long expect = ((grid % 64) + 64) % 64;  // low 6 bits
    if (expect >= 32) expect -= 64;              // signed reinterpretation
    CHECK(wr.raw == expect);
  }
}

TEST_CASE("add/mul exact in a full-precision output format (exhaustive small)") {
  const FixedFormat fa = fmt(4, 2, false);  // values k/4, k in 0..15
  const FixedFormat fb = fmt(4, 1, true);   // values k/2, k in -8..7
  const FixedFormat wide = fmt(16, 3, true);
  for (int ra = 0; ra <= 15; ++ra) {
    for (int rb = -8; rb <= 7; ++rb) {
      const FixedValue a{ra, fa};
      const FixedValue b{rb, fb};
      // exact results on the 2^-3 grid: a = ra/4 = 2ra/8, b = rb/2 = 4rb/8
      const long long sum_raw = 2LL * ra + 4LL * rb;
      CHECK(add(a, b, wide).raw == sum_raw);
      // product grid is 2^-3 as well: ra/4 * rb/2 = ra*rb/8
      CHECK(mul(a, b, wide).raw == static_cast<long long>(ra) * rb);
    }
  }
}

TEST_CASE("unsigned 64-bit formats round-trip through the raw bit pattern") {
  const FixedFormat u64 = fmt(64, 0, false);
  const FixedValue v = quantize(Rational((1LL << 62)), u64);
  CHECK(v.raw_int() == (int128{1} << 62));
  // saturation bound of u64.0 is 2^64 - 1; force it via a doubled add
  const FixedValue top = add(v, v, u64);  // 2^63, representable
  CHECK(top.raw_int() == (int128{1} << 63));
  const FixedValue sat = add(top, top, u64);  // 2^64 saturates to 2^64-1
  CHECK(sat.raw_int() == (int128{1} << 64) - 1);
}
