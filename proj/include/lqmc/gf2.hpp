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
#include <vector>

namespace lqmc {

// Polynomial x^m + a_{m-1} x^{m-1} + ... + a_1 x + a_0 over GF(2).
// Bit j of coefficients() holds a_j; the leading x^m term is implicit.
class Gf2Poly {
 public:
  static constexpr int kMinDegree = 2;
  static constexpr int kMaxDegree = 32;

  // Throws ConfigError unless 2 <= degree <= 32, a_0 = 1 and the mask has
  // no bits at or above `degree`.
  Gf2Poly(int degree, std::uint32_t coefficients);

  int degree() const { return degree_; }
  std::uint32_t coefficients() const { return coefficients_; }
  bool coefficient(int j) const { return (coefficients_ >> j) & 1u; }

  // Full representation including the x^m bit.
  std::uint64_t full_mask() const {
    return (std::uint64_t{1} << degree_) | coefficients_;
  }

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

 private:
  int degree_;
  std::uint32_t coefficients_;
};

// Distinct prime factors of n in increasing order, by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Arithmetic in GF(2)[x] / (poly). Residues are masks of degree < m.
std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, const Gf2Poly& poly);
std::uint64_t gf2_powmod(std::uint64_t base, std::uint64_t exponent,
                         const Gf2Poly& poly);

// Polynomial gcd over GF(2) on full masks (bit j = coefficient of x^j).
std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b);

// Rabin's test.
bool is_irreducible(const Gf2Poly& poly);

// True iff the polynomial is primitive: irreducible, and x has
// multiplicative order exactly 2^m - 1 modulo poly.
bool is_primitive(const Gf2Poly& poly);

// Overload for callers holding a raw (degree, mask); throws ConfigError with
// an "unsupported order" message when degree lies outside [2, 32].
bool is_primitive(int degree, std::uint32_t coefficients);

}  // namespace lqmc
