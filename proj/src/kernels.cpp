// SPDX-License-Identifier: Apache-2.0
#include "pixelmill/kernels.hpp"

namespace pixelmill {

namespace {

Kernel make3(std::string name, std::array<long long, 9> n, long long den = 1) {
  Kernel k;
  k.name = std::move(name);
  k.size = 3;
  for (int i = 0; i < 9; ++i) k.coeffs[i] = Rational(n[i], den);
  return k;
}

Kernel make2(std::string name, std::array<long long, 4> n) {
  Kernel k;
  k.name = std::move(name);
  k.size = 2;
  for (int i = 0; i < 4; ++i) k.coeffs[i] = Rational(n[i]);
  return k;
}

[[noreturn]] void bad_combination(OperatorKind kind, GradientPath path) {
  const char* p = path == GradientPath::Gx ? "gx" : path == GradientPath::Gy ? "gy" : "single";
  throw InvalidCombination(std::string("operator '") + std::string(operator_name(kind)) +
                           "' has no '" + p + "' mask");
}

}  // namespace

bool is_dual_path(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::Roberts:
    case OperatorKind::Prewitt:
    case OperatorKind::Sobel:
    case OperatorKind::Scharr:
      return true;
    default:
      return false;
  }
}

std::string_view operator_name(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::Roberts: return "roberts";
    case OperatorKind::Prewitt: return "prewitt";
    case OperatorKind::Sobel: return "sobel";
    case OperatorKind::Scharr: return "scharr";
    case OperatorKind::Laplacian: return "laplacian";
    case OperatorKind::LoG: return "log";
    case OperatorKind::GaussianBlur: return "gauss";
    case OperatorKind::Sharpen: return "sharpen";
  }
  return "?";
}

std::optional<OperatorKind> operator_from_name(std::string_view name) noexcept {
  for (OperatorKind k :
       {OperatorKind::Roberts, OperatorKind::Prewitt, OperatorKind::Sobel, OperatorKind::Scharr,
        OperatorKind::Laplacian, OperatorKind::LoG, OperatorKind::GaussianBlur,
        OperatorKind::Sharpen}) {
    if (operator_name(k) == name) return k;
  }
  return std::nullopt;
}

Kernel kernel_for(OperatorKind kind, GradientPath path, RobertsGyVariant roberts_gy) {
  const bool dual = is_dual_path(kind);
  if (dual && path == GradientPath::Single) bad_combination(kind, path);
  if (!dual && path != GradientPath::Single) bad_combination(kind, path);

  switch (kind) {
    case OperatorKind::Roberts:
      if (path == GradientPath::Gx) return make2("roberts-gx", {1, 0, 0, -1});
      if (roberts_gy == RobertsGyVariant::Cross) return make2("roberts-gy", {0, 1, -1, 0});
      return make2("roberts-gy-skew", {0, 1, -1, 1});
    case OperatorKind::Prewitt:
      return path == GradientPath::Gx
                 ? make3("prewitt-gx", {-1, 0, 1, -1, 0, 1, -1, 0, 1})
                 : make3("prewitt-gy", {-1, -1, -1, 0, 0, 0, 1, 1, 1});
    case OperatorKind::Sobel:
      return path == GradientPath::Gx
                 ? make3("sobel-gx", {-1, -2, -1, 0, 0, 0, 1, 2, 1})
                 : make3("sobel-gy", {-1, 0, 1, -2, 0, 2, -1, 0, 1});
    case OperatorKind::Scharr:
      return path == GradientPath::Gx
                 ? make3("scharr-gx", {3, 10, 3, 0, 0, 0, -3, -10, -3})
                 : make3("scharr-gy", {3, 0, -3, 10, 0, -10, 3, 0, -3});
    case OperatorKind::Laplacian:
      return make3("laplacian", {-1, -1, -1, -1, 8, -1, -1, -1, -1});
    case OperatorKind::LoG:
      // Runs as GaussianBlur then Laplacian; there is no fused mask.
      bad_combination(kind, path);
    case OperatorKind::GaussianBlur:
      return make3("gauss", {1, 2, 1, 2, 4, 2, 1, 2, 1}, 16);
    case OperatorKind::Sharpen:
      return make3("sharpen", {-1, -1, -1, 1, 16, 1, -1, -1, -1}, 8);
  }
  bad_combination(kind, path);
}

Rational kernel_sum(const Kernel& k) {
  Rational sum;
  for (int i = 0; i < k.tap_count(); ++i) sum = sum + k.coeffs[i];
  return sum;
}

Kernel parse_custom_kernel(std::string_view csv) {
  Kernel k;
  k.name = "custom";
  k.size = 3;
  size_t pos = 0;
  for (int i = 0; i < 9; ++i) {
    const size_t end = csv.find(',', pos);
    if (i < 8 && end == std::string_view::npos)
      throw ParseError("custom kernel needs nine comma-separated values, got " +
                       std::to_string(i + 1));
    if (i == 8 && end != std::string_view::npos)
      throw ParseError("custom kernel has more than nine values");
    std::string_view tok = csv.substr(pos, (i == 8 ? csv.size() : end) - pos);
    // tolerate surrounding spaces
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    k.coeffs[i] = Rational::parse(tok);
    pos = end + 1;
  }
  return k;
}

}  // namespace pixelmill
