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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lqmc/gf2.hpp"

namespace lqmc {

// Tausworthe generator parameters. The bit recurrence is
//   b_i = sum_j a_j b_{i-m+j} (mod 2),  i >= m,
// seeded with b_0..b_{m-1}, and output i is the m-bit window starting at
// bit s*i read as a binary fraction (b_{s i} most significant).
class LfsrConfig {
 public:
  // `seed` holds b_j in bit j. Throws ConfigError when the seed is zero or
  // does not fit in m bits, or when gcd(offset, 2^m - 1) != 1.
  LfsrConfig(Gf2Poly poly, std::uint64_t offset, std::uint32_t seed = 1);

  const Gf2Poly& poly() const { return poly_; }
  int order() const { return poly_.degree(); }
  std::uint64_t offset() const { return offset_; }
  std::uint32_t seed() const { return seed_; }
  std::uint64_t period() const {
    return (std::uint64_t{1} << poly_.degree()) - 1;
  }

  friend bool operator==(const LfsrConfig&, const LfsrConfig&) = default;

 private:
  Gf2Poly poly_;
  std::uint64_t offset_;
  std::uint32_t seed_;
};

// b_0 .. b_{count-1}.
std::vector<std::uint8_t> lfsr_bitstream(const LfsrConfig& config,
                                         std::size_t count);

// One full period of outputs, stored exactly as numerators k of k / 2^m.
class CudSequence {
 public:
  // Largest order that generate_cud will materialize (2^28 - 1 values).
  static constexpr int kMaxMaterializedOrder = 28;

  CudSequence(LfsrConfig config, std::vector<std::uint32_t> numerators);

  const LfsrConfig& config() const { return config_; }
  int order() const { return config_.order(); }
  std::size_t size() const { return numerators_.size(); }
  std::uint32_t numerator(std::size_t i) const { return numerators_[i]; }
  std::span<const std::uint32_t> numerators() const { return numerators_; }

  // v_i in (0, 1).
  double operator[](std::size_t i) const;
  std::vector<double> values() const;

 private:
  LfsrConfig config_;
  std::vector<std::uint32_t> numerators_;
};

// Throws ConfigError if the polynomial is not primitive, SizeError above
// kMaxMaterializedOrder.
CudSequence generate_cud(const LfsrConfig& config);

// Length of the cycle the m-bit window state enters from the seed.
std::uint64_t lfsr_period(const LfsrConfig& config);

// Equidistribution of overlapping d-tuples (v_i, ..., v_{i+d-1}) over one
// period. Entry d-1 is the largest l <= floor(m/d) such that the leading l
// bits of each of the d coordinates take every nonzero pattern equally often,
// computed as a GF(2) rank condition.
std::vector<int> equidistribution_resolution(const Gf2Poly& poly,
                                             std::uint64_t offset,
                                             int max_dim);

// sum_{d=2}^{max_dim} (floor(m/d) - l_d); zero means every projection is
// maximally equidistributed.
int equidistribution_defect(const Gf2Poly& poly, std::uint64_t offset,
                            int max_dim);

// Offset with the smallest defect among those coprime with 2^m - 1 in
// [1, max_offset]. At equal defect, offsets outside {2^k mod 2^m - 1} win
// (those reproduce the generator's own recurrence); then the smaller offset.
std::uint64_t search_offset(const Gf2Poly& poly, int max_dim,
                            std::uint64_t max_offset);

struct PolyTableEntry {
  int order;
  std::uint32_t coefficients;
  std::uint64_t offset;
};

// Built-in generators, one per order 3..32.
std::span<const PolyTableEntry> builtin_table();
const PolyTableEntry& table_entry(int order);

// Table polynomial and offset for `order`, seed (1, 0, ..., 0). When
// `offset_override` is nonzero it replaces the table offset.
LfsrConfig default_config(int order, std::uint64_t offset_override = 0);

// Dimensions used by the built-in offset search.
inline constexpr int kOffsetSearchDims = 16;
inline constexpr std::uint64_t kOffsetSearchLimit = 4096;

}  // namespace lqmc
