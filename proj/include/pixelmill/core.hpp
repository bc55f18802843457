// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace pixelmill {

using int128 = __int128;
using uint128 = unsigned __int128;

// How windowed reads outside the frame resolve.
enum class Padding { Zero, Replicate };

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be opened, read, or written.
struct IoError : Error {
  using Error::Error;
};
// Image payload is malformed; message names the offending byte offset.
struct FormatError : Error {
  using Error::Error;
};
// Bad spec text (pipeline string, ROI grammar, number format, kernel CSV);
// message names the offending token.
struct ParseError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct LengthMismatch : Error {
  using Error::Error;
};
struct FormatTooNarrow : Error {
  using Error::Error;
};
struct AccumulatorTooNarrow : Error {
  using Error::Error;
};
struct InvalidCombination : Error {
  using Error::Error;
};
struct EmptyRoi : Error {
  using Error::Error;
};
struct TooFewPixels : Error {
  using Error::Error;
};
struct UndefinedDirection : Error {
  using Error::Error;
};

}  // namespace pixelmill
