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

#include "lqmc/prng.hpp"

#include <array>
#include <cmath>
#include <cstdint>

#include "gtest/gtest.h"

namespace lqmc {
namespace {

// Frozen from an independent implementation of the documented recipe.
TEST(BaselinePrngTest, FrozenOutputs) {
  BaselinePrng a(0, 0);
  EXPECT_EQ(a.next_u64(), 0x83318a9282400131u);
  EXPECT_EQ(a.next_u64(), 0xd247d3921df91bd3u);
  EXPECT_EQ(a.next_u64(), 0x54562af1661ea201u);
  BaselinePrng b(42, 7);
  EXPECT_EQ(b.next_u64(), 0xb1d031fb3d144310u);
  EXPECT_EQ(b.next_u64(), 0x74d5bf8096abbf87u);
  EXPECT_EQ(b.next_u64(), 0xccac3bc322b69d15u);
  BaselinePrng c(1, (std::uint64_t{14} << 40) | (3u << 8) | 2u);
  EXPECT_EQ(c.next_u64(), 0xbfbbb42c02a0cbf8u);
  EXPECT_EQ(c.counter(), 1u);
}

TEST(BaselinePrngTest, StreamsAreDistinctAndReproducible) {
  BaselinePrng a(5, 1), b(5, 1), c(5, 2), d(6, 1);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(BaselinePrngTest, UniformRanges) {
  BaselinePrng rng(3, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_EQ(std::ldexp(u, 53), std::floor(std::ldexp(u, 53)));
    const double v = rng.uniform_open();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(BaselinePrngTest, BelowIsBoundedAndBalanced) {
  BaselinePrng rng(11, 4);
  std::array<int, 10> counts{};
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const auto k = rng.below(10);
    ASSERT_LT(k, 10u);
    ++counts[k];
  }
  // Binomial(1e5, 0.1): sd = 94.9; allow 5 sd.
  for (int c : counts) EXPECT_NEAR(c, kDraws / 10, 475);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(BaselinePrngTest, NormalMoments) {
  BaselinePrng rng(8, 8);
  constexpr int kDraws = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  // Standard errors: 1/sqrt(n) = 0.0022 for the mean, sqrt(2/n) = 0.0032
  // for the second moment; 5 sd.
  EXPECT_NEAR(sum / kDraws, 0.0, 0.011);
  EXPECT_NEAR(sum_sq / kDraws, 1.0, 0.016);
}

TEST(BaselinePrngTest, MixIsSplitMixFinalizer) {
  EXPECT_EQ(BaselinePrng::mix(0), 0u);
  // z = 1 through the three documented xor-shift-multiply stages.
  std::uint64_t z = 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9u;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBu;
  z ^= z >> 31;
  EXPECT_EQ(BaselinePrng::mix(1), z);
}

}  // namespace
}  // namespace lqmc
