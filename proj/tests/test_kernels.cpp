// SPDX-License-Identifier: Apache-2.0
#include <vector>

#include "doctest.h"
#include "pixelmill/kernels.hpp"

using namespace pixelmill;

namespace {

std::vector<long long> ints(const Kernel& k) {
  std::vector<long long> v;
  for (int i = 0; i < k.tap_count(); ++i) {
    REQUIRE(k.coeffs[i].is_integer());
    v.push_back(k.coeffs[i].num);
  }
  return v;
}

}  // namespace

TEST_CASE("catalog masks") {
  CHECK(ints(kernel_for(OperatorKind::Roberts, GradientPath::Gx)) ==
        std::vector<long long>{1, 0, 0, -1});
  CHECK(ints(kernel_for(OperatorKind::Roberts, GradientPath::Gy)) ==
        std::vector<long long>{0, 1, -1, 0});
  CHECK(ints(kernel_for(OperatorKind::Roberts, GradientPath::Gy, RobertsGyVariant::Skew)) ==
        std::vector<long long>{0, 1, -1, 1});

  CHECK(ints(kernel_for(OperatorKind::Prewitt, GradientPath::Gx)) ==
        std::vector<long long>{-1, 0, 1, -1, 0, 1, -1, 0, 1});
  CHECK(ints(kernel_for(OperatorKind::Prewitt, GradientPath::Gy)) ==
        std::vector<long long>{-1, -1, -1, 0, 0, 0, 1, 1, 1});

  CHECK(ints(kernel_for(OperatorKind::Sobel, GradientPath::Gx)) ==
        std::vector<long long>{-1, -2, -1, 0, 0, 0, 1, 2, 1});
  CHECK(ints(kernel_for(OperatorKind::Sobel, GradientPath::Gy)) ==
        std::vector<long long>{-1, 0, 1, -2, 0, 2, -1, 0, 1});

  CHECK(ints(kernel_for(OperatorKind::Scharr, GradientPath::Gx)) ==
        std::vector<long long>{3, 10, 3, 0, 0, 0, -3, -10, -3});
  CHECK(ints(kernel_for(OperatorKind::Scharr, GradientPath::Gy)) ==
        std::vector<long long>{3, 0, -3, 10, 0, -10, 3, 0, -3});

  CHECK(ints(kernel_for(OperatorKind::Laplacian, GradientPath::Single)) ==
        std::vector<long long>{-1, -1, -1, -1, 8, -1, -1, -1, -1});

  const Kernel gauss = kernel_for(OperatorKind::GaussianBlur, GradientPath::Single);
  const std::array<long long, 9> gauss_num{1, 2, 1, 2, 4, 2, 1, 2, 1};
  for (int i = 0; i < 9; ++i) CHECK(gauss.coeffs[i] == Rational(gauss_num[i], 16));

  const Kernel sharpen = kernel_for(OperatorKind::Sharpen, GradientPath::Single);
  const std::array<long long, 9> sharpen_num{-1, -1, -1, 1, 16, 1, -1, -1, -1};
  for (int i = 0; i < 9; ++i) CHECK(sharpen.coeffs[i] == Rational(sharpen_num[i], 8));
}

TEST_CASE("coefficient sums") {
  // every derivative mask sums to zero
  for (OperatorKind k : {OperatorKind::Prewitt, OperatorKind::Sobel, OperatorKind::Scharr}) {
    CHECK(kernel_sum(kernel_for(k, GradientPath::Gx)) == Rational(0));
    CHECK(kernel_sum(kernel_for(k, GradientPath::Gy)) == Rational(0));
  }
  CHECK(kernel_sum(kernel_for(OperatorKind::Roberts, GradientPath::Gx)) == Rational(0));
  CHECK(kernel_sum(kernel_for(OperatorKind::Roberts, GradientPath::Gy)) == Rational(0));
  CHECK(kernel_sum(kernel_for(OperatorKind::Laplacian, GradientPath::Single)) == Rational(0));

  CHECK(kernel_sum(kernel_for(OperatorKind::GaussianBlur, GradientPath::Single)) == Rational(1));
  CHECK(kernel_sum(kernel_for(OperatorKind::Sharpen, GradientPath::Single)) == Rational(3, 2));

  // the skew Gy variant is the one mask that is not zero-sum
  CHECK(kernel_sum(kernel_for(OperatorKind::Roberts, GradientPath::Gy, RobertsGyVariant::Skew)) ==
        Rational(1));
}

TEST_CASE("invalid kind/path combinations") {
  CHECK_THROWS_AS(kernel_for(OperatorKind::Laplacian, GradientPath::Gx), InvalidCombination);
  CHECK_THROWS_AS(kernel_for(OperatorKind::GaussianBlur, GradientPath::Gy), InvalidCombination);
  CHECK_THROWS_AS(kernel_for(OperatorKind::Sobel, GradientPath::Single), InvalidCombination);
  CHECK_THROWS_AS(kernel_for(OperatorKind::LoG, GradientPath::Single), InvalidCombination);
  CHECK_THROWS_AS(kernel_for(OperatorKind::LoG, GradientPath::Gx), InvalidCombination);
}

TEST_CASE("operator names") {
  CHECK(operator_from_name("sobel") == OperatorKind::Sobel);
  CHECK(operator_from_name("log") == OperatorKind::LoG);
  CHECK(operator_from_name("gauss") == OperatorKind::GaussianBlur);
  CHECK_FALSE(operator_from_name("bogus").has_value());
  for (OperatorKind k : {OperatorKind::Roberts, OperatorKind::Prewitt, OperatorKind::Sobel,
                         OperatorKind::Scharr, OperatorKind::Laplacian, OperatorKind::LoG,
                         OperatorKind::GaussianBlur, OperatorKind::Sharpen})
    CHECK(operator_from_name(operator_name(k)) == k);
}

TEST_CASE("dual/single path classification") {
  CHECK(is_dual_path(OperatorKind::Roberts));
  CHECK(is_dual_path(OperatorKind::Prewitt));
  CHECK(is_dual_path(OperatorKind::Sobel));
  CHECK(is_dual_path(OperatorKind::Scharr));
  CHECK_FALSE(is_dual_path(OperatorKind::Laplacian));
  CHECK_FALSE(is_dual_path(OperatorKind::LoG));
  CHECK_FALSE(is_dual_path(OperatorKind::GaussianBlur));
  CHECK_FALSE(is_dual_path(OperatorKind::Sharpen));
}

TEST_CASE("custom kernel parsing") {
  const Kernel k = parse_custom_kernel("-1,0,1,-2,0,2,-1,0,1");
  CHECK(k.size == 3);
  CHECK(k.coeffs[3] == Rational(-2));
  CHECK(kernel_sum(k) == Rational(0));

  const Kernel frac = parse_custom_kernel("1/16, 2/16, 1/16, 0.125, 0, 0.125, 1/16, 2/16, 1/16");
  CHECK(frac.coeffs[0] == Rational(1, 16));
  CHECK(frac.coeffs[3] == Rational(1, 8));

  CHECK_THROWS_AS(parse_custom_kernel("1,2,3"), ParseError);
  CHECK_THROWS_AS(parse_custom_kernel("1,2,3,4,5,6,7,8,9,10"), ParseError);
  CHECK_THROWS_AS(parse_custom_kernel("1,2,3,4,x,6,7,8,9"), ParseError);
}
