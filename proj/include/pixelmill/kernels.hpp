// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "pixelmill/fixed.hpp"

namespace pixelmill {

enum class OperatorKind {
  Roberts,
  Prewitt,
  Sobel,
  Scharr,
  Laplacian,
  LoG,  // Gaussian smoothing followed by the Laplacian, run as a cascade
  GaussianBlur,
  Sharpen,
};

enum class GradientPath { Gx, Gy, Single };

/// The classic Roberts cross pairs [[1,0],[0,-1]] with [[0,1],[-1,0]].
/// Skew replaces the Gy mask with [[0,1],[-1,1]], a variant that keeps an
/// extra +1 tap and is therefore not zero-sum.
enum class RobertsGyVariant { Cross, Skew };

/// K x K coefficient mask with exact rational entries, row-major.
struct Kernel {
  std::string name;
  int size = 3;
  std::array<Rational, 9> coeffs{};

  const Rational& at(int i, int j) const { return coeffs[i * size + j]; }
  int tap_count() const noexcept { return size * size; }
};

/// Gradient operators produce a Gx/Gy pair; the rest are single masks.
bool is_dual_path(OperatorKind kind) noexcept;

std::string_view operator_name(OperatorKind kind) noexcept;

/// Lower-case CLI names: roberts|prewitt|sobel|scharr|laplacian|log|gauss|sharpen.
std::optional<OperatorKind> operator_from_name(std::string_view name) noexcept;

/// The catalog mask for (kind, path). Throws InvalidCombination when the
/// path does not exist for the operator (e.g. a Gx request for Laplacian,
/// or any request for LoG, which has no single mask).
Kernel kernel_for(OperatorKind kind, GradientPath path,
                  RobertsGyVariant roberts_gy = RobertsGyVariant::Cross);

/// Exact coefficient sum.
Rational kernel_sum(const Kernel& k);

/// Nine comma-separated rationals, row-major 3x3 ("-1,0,1,-2,0,2,-1,0,1").
Kernel parse_custom_kernel(std::string_view csv);

}  // namespace pixelmill
