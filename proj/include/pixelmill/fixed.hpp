// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "pixelmill/core.hpp"

namespace pixelmill {

enum class Overflow { Wrap, Saturate };
enum class Quantization { Truncate, RoundNearest };

/// Word format of a fixed-point signal: `total_bits` raw bits (two's
/// complement when signed) scaled by 2^-fraction_bits, plus the policies
/// applied whenever a value is forced into the format.
///
/// Truncate rounds toward negative infinity (plain bit truncation of a
/// two's-complement word); RoundNearest rounds to the nearest grid point
/// with ties away from zero. Saturate clamps to the representable range;
/// Wrap keeps the low total_bits bits (exact modular arithmetic).
struct FixedFormat {
  int total_bits = 16;
  int fraction_bits = 0;
  bool is_signed = true;
  Overflow overflow = Overflow::Saturate;
  Quantization quantization = Quantization::Truncate;

  bool valid() const noexcept;

  /// Raw-integer range: unsigned [0, 2^n - 1], signed [-2^(n-1), 2^(n-1) - 1].
  int128 min_int() const noexcept;
  int128 max_int() const noexcept;

  double min_value() const noexcept;
  double max_value() const noexcept;
  double step() const noexcept;  // 2^-fraction_bits

  /// Canonical text form, e.g. "u8.0:sat:trunc".
  std::string to_string() const;
  /// Accepts "u8.4", "S16.8:wrap", "s18.8:sat:round"; case-insensitive,
  /// suffix order free, defaults :sat:trunc. Throws ParseError.
  static FixedFormat parse(std::string_view text);

  friend bool operator==(const FixedFormat&, const FixedFormat&) = default;
};

/// Exact fraction num/den with den > 0, kept reduced.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n) {}  // NOLINT: implicit integer literal
  Rational(long long n, long long d);

  bool is_integer() const noexcept { return den == 1; }
  double to_double() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string to_string() const;
  /// Accepts "-2", "1/16", "0.25". Throws ParseError.
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// A value held in a FixedFormat. `raw` stores the bit pattern sign-extended
/// to 64 bits for signed formats and zero-extended for unsigned ones, so the
/// represented value is exactly raw_int() * 2^-fraction_bits.
struct FixedValue {
  int64_t raw = 0;
  FixedFormat format{};

  /// The integer the raw bits encode (reads unsigned 64-bit formats correctly).
  int128 raw_int() const noexcept;
  /// Nearest double to the exact value. Exact whenever |raw| < 2^53.
  double value() const noexcept;

  friend bool operator==(const FixedValue&, const FixedValue&) = default;
};

/// Quantize the exact value mant * 2^exp2 into fmt: grid rounding per
/// fmt.quantization, then range handling per fmt.overflow. Never fails;
/// the overflow policy always yields a value.
FixedValue quantize_scaled(int128 mant, int exp2, const FixedFormat& fmt);

FixedValue quantize(const Rational& x, const FixedFormat& fmt);
/// Quantizes the exact value of the double (doubles are dyadic rationals).
FixedValue quantize(double x, const FixedFormat& fmt);

/// Exact rational sum / product of the operands, quantized once into out_fmt.
/// Intermediates are held in wide integers; operands whose aligned magnitude
/// would exceed 126 bits are rejected with Error (far outside any format this
/// library is used with).
FixedValue add(const FixedValue& a, const FixedValue& b, const FixedFormat& out_fmt);
FixedValue mul(const FixedValue& a, const FixedValue& b, const FixedFormat& out_fmt);

}  // namespace pixelmill
