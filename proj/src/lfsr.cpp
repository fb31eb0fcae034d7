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

#include "lqmc/lfsr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "lqmc/error.hpp"

namespace lqmc {
namespace {

// Linear map on m-bit window states, stored column-wise: column j is the
// image of the unit state with only bit j set.
struct Gf2Matrix {
  int m = 0;
  std::array<std::uint32_t, 32> columns{};

  std::uint32_t apply(std::uint32_t state) const {
    std::uint32_t out = 0;
    while (state != 0) {
      out ^= columns[std::countr_zero(state)];
      state &= state - 1;
    }
    return out;
  }

  // Row j as a mask over input bits.
  std::uint32_t row(int j) const {
    std::uint32_t r = 0;
    for (int k = 0; k < m; ++k) r |= ((columns[k] >> j) & 1u) << k;
    return r;
  }

  static Gf2Matrix identity(int m) {
    Gf2Matrix id{m, {}};
    for (int j = 0; j < m; ++j) id.columns[j] = 1u << j;
    return id;
  }
};

// (a * b)(x) = a(b(x)).
Gf2Matrix compose(const Gf2Matrix& a, const Gf2Matrix& b) {
  Gf2Matrix out{a.m, {}};
  for (int j = 0; j < a.m; ++j) out.columns[j] = a.apply(b.columns[j]);
  return out;
}

std::uint32_t step_once(std::uint32_t state, const Gf2Poly& poly) {
  const int m = poly.degree();
  const std::uint32_t feedback =
      static_cast<std::uint32_t>(std::popcount(state & poly.coefficients()) & 1);
  return (state >> 1) | (feedback << (m - 1));
}

Gf2Matrix single_step_matrix(const Gf2Poly& poly) {
  Gf2Matrix step{poly.degree(), {}};
  for (int j = 0; j < poly.degree(); ++j) {
    step.columns[j] = step_once(1u << j, poly);
  }
  return step;
}

Gf2Matrix jump_matrix(const Gf2Poly& poly, std::uint64_t steps) {
  Gf2Matrix result = Gf2Matrix::identity(poly.degree());
  Gf2Matrix base = single_step_matrix(poly);
  while (steps != 0) {
    if (steps & 1u) result = compose(base, result);
    base = compose(base, base);
    steps >>= 1;
  }
  return result;
}

std::uint32_t reverse_low_bits(std::uint32_t state, int m) {
  std::uint32_t out = 0;
  for (int j = 0; j < m; ++j) out |= ((state >> j) & 1u) << (m - 1 - j);
  return out;
}

int gf2_rank(std::span<const std::uint32_t> vectors) {
  std::array<std::uint32_t, 32> basis{};  // basis[b] has leading bit b
  int rank = 0;
  for (std::uint32_t v : vectors) {
    while (v != 0) {
      const int lead = 31 - std::countl_zero(v);
      if (basis[lead] == 0) {
        basis[lead] = v;
        ++rank;
        break;
      }
      v ^= basis[lead];
    }
  }
  return rank;
}

}  // namespace

LfsrConfig::LfsrConfig(Gf2Poly poly, std::uint64_t offset, std::uint32_t seed)
    : poly_(poly), offset_(offset), seed_(seed) {
  const int m = poly_.degree();
  if (seed_ == 0) throw ConfigError("LFSR seed must not be all zero");
  if (m < 32 && (seed_ >> m) != 0) {
    throw ConfigError("LFSR seed has more than m bits");
  }
  if (offset_ == 0) throw ConfigError("LFSR offset must be positive");
  if (std::gcd(offset_, period()) != 1) {
    throw ConfigError("offset " + std::to_string(offset_) +
                      " is not coprime with 2^m - 1 = " +
                      std::to_string(period()));
  }
}

std::vector<std::uint8_t> lfsr_bitstream(const LfsrConfig& config,
                                         std::size_t count) {
  std::vector<std::uint8_t> bits;
  bits.reserve(count);
  std::uint32_t state = config.seed();
  for (std::size_t i = 0; i < count; ++i) {
    bits.push_back(static_cast<std::uint8_t>(state & 1u));
    state = step_once(state, config.poly());
  }
  return bits;
}

CudSequence::CudSequence(LfsrConfig config,
                         std::vector<std::uint32_t> numerators)
    : config_(config), numerators_(std::move(numerators)) {}

double CudSequence::operator[](std::size_t i) const {
  return std::ldexp(static_cast<double>(numerators_[i]), -order());
}

std::vector<double> CudSequence::values() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = (*this)[i];
  return out;
}

CudSequence generate_cud(const LfsrConfig& config) {
  const int m = config.order();
  if (m > CudSequence::kMaxMaterializedOrder) {
    throw SizeError("order " + std::to_string(m) +
                    " too large to materialize (max " +
                    std::to_string(CudSequence::kMaxMaterializedOrder) + ")");
  }
  if (!is_primitive(config.poly())) {
    throw ConfigError("characteristic polynomial is not primitive");
  }
  const std::uint64_t n = config.period();
  const Gf2Matrix jump = jump_matrix(config.poly(), config.offset());
  std::vector<std::uint32_t> numerators(n);
  std::uint32_t state = config.seed();
  for (std::uint64_t i = 0; i < n; ++i) {
    numerators[i] = reverse_low_bits(state, m);
    state = jump.apply(state);
  }
  return CudSequence(config, std::move(numerators));
}

std::uint64_t lfsr_period(const LfsrConfig& config) {
  const std::uint32_t start = config.seed();
  std::uint32_t state = step_once(start, config.poly());
  std::uint64_t steps = 1;
  const std::uint64_t limit = std::uint64_t{1} << config.order();
  while (state != start) {
    state = step_once(state, config.poly());
    if (++steps > limit) break;  // seed not on a cycle; cannot happen with a0=1
  }
  return steps;
}

std::vector<int> equidistribution_resolution(const Gf2Poly& poly,
                                             std::uint64_t offset,
                                             int max_dim) {
  const int m = poly.degree();
  const Gf2Matrix jump = jump_matrix(poly, offset);
  // rows[c][j]: functional giving bit j of output c, relative to output 0.
  std::vector<std::array<std::uint32_t, 32>> rows(max_dim);
  Gf2Matrix power = Gf2Matrix::identity(m);
  for (int c = 0; c < max_dim; ++c) {
    for (int j = 0; j < m; ++j) rows[c][j] = power.row(j);
    power = compose(jump, power);
  }
  std::vector<int> resolution(max_dim, 0);
  std::vector<std::uint32_t> vectors;
  for (int d = 1; d <= max_dim; ++d) {
    int best = 0;
    for (int l = 1; l * d <= m; ++l) {
      vectors.clear();
      for (int c = 0; c < d; ++c) {
        for (int j = 0; j < l; ++j) vectors.push_back(rows[c][j]);
      }
      if (gf2_rank(vectors) != d * l) break;
      best = l;
    }
    resolution[d - 1] = best;
  }
  return resolution;
}

int equidistribution_defect(const Gf2Poly& poly, std::uint64_t offset,
                            int max_dim) {
  const int m = poly.degree();
  const std::vector<int> res = equidistribution_resolution(poly, offset, max_dim);
  int defect = 0;
  for (int d = 2; d <= max_dim; ++d) defect += m / d - res[d - 1];
  return defect;
}

std::uint64_t search_offset(const Gf2Poly& poly, int max_dim,
                            std::uint64_t max_offset) {
  const int m = poly.degree();
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  max_offset = std::min(max_offset, n - 1);
  // Offsets 2^k mod n decimate the bit stream into a shift of itself, so each
  // output bit keeps the generator's own sparse recurrence at lags <= m.
  auto self_decimating = [&](std::uint64_t s) {
    for (int k = 0; k < m; ++k) {
      if (s == (std::uint64_t{1} << k) % n) return true;
    }
    return false;
  };
  std::uint64_t best_offset = 1;
  std::pair<int, bool> best{-1, true};
  for (std::uint64_t s = 1; s <= max_offset; ++s) {
    if (std::gcd(s, n) != 1) continue;
    const std::pair<int, bool> key{equidistribution_defect(poly, s, max_dim),
                                   self_decimating(s)};
    if (best.first < 0 || key < best) {
      best = key;
      best_offset = s;
      if (key == std::pair<int, bool>{0, false}) break;
    }
  }
  return best_offset;
}

const PolyTableEntry& table_entry(int order) {
  const auto table = builtin_table();
  if (order < table.front().order || order > table.back().order) {
    throw ConfigError("order " + std::to_string(order) +
                      " outside the built-in table range " +
                      std::to_string(table.front().order) + ".." +
                      std::to_string(table.back().order));
  }
  return table[static_cast<std::size_t>(order - table.front().order)];
}

LfsrConfig default_config(int order, std::uint64_t offset_override) {
  const PolyTableEntry& entry = table_entry(order);
  return LfsrConfig(Gf2Poly(entry.order, entry.coefficients),
                    offset_override != 0 ? offset_override : entry.offset, 1u);
}

}  // namespace lqmc
