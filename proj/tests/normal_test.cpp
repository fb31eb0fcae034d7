// Copyright 2026 The lqmc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lqmc/normal.hpp"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "lqmc/error.hpp"

namespace lqmc {
namespace {

// Extended-precision CDF oracle.
long double phi_oracle(long double x) {
  return 0.5L * std::erfc(-x / std::sqrt(2.0L));
}

// Quantile by bisection on the extended-precision oracle.
long double bisect_quantile(long double u) {
  long double lo = -40.0L, hi = 40.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (phi_oracle(mid) < u ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

TEST(NormalCdfTest, MatchesExtendedPrecisionOracle) {
  for (double x = -30.0; x <= 8.0; x += 0.0625) {
    const double expected = static_cast<double>(phi_oracle(x));
    // Rounding of -x / sqrt(2) costs about x^2 ulps of relative accuracy.
    EXPECT_NEAR(normal_cdf(x) / expected, 1.0, 1e-15 * (4.0 + x * x)) << x;
  }
}

TEST(InverseNormalCdfTest, Examples) {
  EXPECT_EQ(inverse_normal_cdf(0.5), 0.0);
  EXPECT_NEAR(inverse_normal_cdf(0.975), 1.959964, 1e-6);
  EXPECT_NEAR(inverse_normal_cdf(0.975), static_cast<double>(bisect_quantile(0.975L)),
              1e-12);
  EXPECT_NEAR(inverse_normal_cdf(0.00134990), -3.0, 1e-4);
}

TEST(InverseNormalCdfTest, RoundTripOnLogGrid) {
  for (int e = -300; e <= -1; ++e) {
    for (double mantissa : {1.0, 3.0, 7.0}) {
      const double u = mantissa * std::pow(10.0, e);
      if (u >= 0.5) continue;
      const double z = inverse_normal_cdf(u);
      EXPECT_NEAR(static_cast<double>(phi_oracle(z)) / u, 1.0, 1e-12) << u;
    }
  }
}

TEST(InverseNormalCdfTest, RoundTripOnUniformGrid) {
  constexpr int kPoints = 20001;
  for (int i = 0; i < kPoints; ++i) {
    const double u = 1e-12 + (1.0 - 2e-12) * i / (kPoints - 1);
    const double z = inverse_normal_cdf(u);
    ASSERT_LE(std::abs(static_cast<double>(phi_oracle(z)) - u), 1e-9) << u;
  }
}

TEST(InverseNormalCdfTest, OddSymmetryOnDyadicGrid) {
  for (int k = 1; k < 4096; ++k) {
    const double u = k / 4096.0;
    EXPECT_EQ(inverse_normal_cdf(1.0 - u), -inverse_normal_cdf(u)) << u;
  }
}

TEST(InverseNormalCdfTest, MonotoneAcrossBranchBoundaries) {
  double previous = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < 100000; ++i) {
    const double z = inverse_normal_cdf(i / 100000.0);
    ASSERT_GT(z, previous) << i;
    previous = z;
  }
}

TEST(InverseNormalCdfTest, DomainErrors) {
  EXPECT_THROW(inverse_normal_cdf(0.0), DomainError);
  EXPECT_THROW(inverse_normal_cdf(1.0), DomainError);
  EXPECT_THROW(inverse_normal_cdf(-0.5), DomainError);
  EXPECT_THROW(inverse_normal_cdf(std::nan("")), DomainError);
}

TEST(ClampOpenUnitTest, Endpoints) {
  EXPECT_EQ(clamp_open_unit(0.0), 0x1p-53);
  EXPECT_EQ(clamp_open_unit(1.0), 1.0 - 0x1p-53);
  EXPECT_EQ(clamp_open_unit(0.25), 0.25);
  EXPECT_LT(std::abs(inverse_normal_cdf(clamp_open_unit(0.0))), 8.3);
}

}  // namespace
}  // namespace lqmc
