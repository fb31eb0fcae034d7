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

#include "lqmc/gf2.hpp"

#include <bit>
#include <string>

#include "lqmc/error.hpp"

namespace lqmc {

Gf2Poly::Gf2Poly(int degree, std::uint32_t coefficients)
    : degree_(degree), coefficients_(coefficients) {
  if (degree < kMinDegree || degree > kMaxDegree) {
    throw ConfigError("unsupported polynomial order " + std::to_string(degree) +
                      " (supported: 2..32)");
  }
  if (degree < 32 && (coefficients >> degree) != 0) {
    throw ConfigError("coefficient mask has bits at or above the degree");
  }
  if ((coefficients & 1u) == 0) {
    throw ConfigError("a_0 must be 1 (x divides the polynomial)");
  }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      factors.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

namespace {

// Reduce a product of two residues (degree < 2m - 1) modulo poly.
std::uint64_t reduce(std::uint64_t value, const Gf2Poly& poly) {
  const int m = poly.degree();
  const std::uint64_t full = poly.full_mask();
  for (int bit = 63; bit >= m; --bit) {
    if ((value >> bit) & 1u) value ^= full << (bit - m);
  }
  return value;
}

int degree_of(std::uint64_t mask) { return 63 - std::countl_zero(mask); }

}  // namespace

std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b,
                         const Gf2Poly& poly) {
  // Interleave shifting and reduction so nothing overflows 64 bits for m=32.
  const int m = poly.degree();
  const std::uint64_t full = poly.full_mask();
  std::uint64_t result = 0;
  a = reduce(a, poly);
  while (b != 0) {
    if (b & 1u) result ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> m) & 1u) a ^= full;
  }
  return result;
}

std::uint64_t gf2_powmod(std::uint64_t base, std::uint64_t exponent,
                         const Gf2Poly& poly) {
  std::uint64_t result = 1;
  base = reduce(base, poly);
  while (exponent != 0) {
    if (exponent & 1u) result = gf2_mulmod(result, base, poly);
    base = gf2_mulmod(base, base, poly);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const int db = degree_of(b);
    while (a != 0 && degree_of(a) >= db) a ^= b << (degree_of(a) - db);
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const Gf2Poly& poly) {
  const int m = poly.degree();
  constexpr std::uint64_t x = 2;
  // x^(2^k) mod poly by repeated squaring.
  auto frobenius = [&](int k) {
    std::uint64_t r = x;
    for (int i = 0; i < k; ++i) r = gf2_mulmod(r, r, poly);
    return r;
  };
  if (frobenius(m) != x) return false;
  for (std::uint64_t q : prime_factors(static_cast<std::uint64_t>(m))) {
    const std::uint64_t h = frobenius(m / static_cast<int>(q)) ^ x;
    if (gf2_gcd(poly.full_mask(), h) != 1) return false;
  }
  return true;
}

bool is_primitive(const Gf2Poly& poly) {
  if (!is_irreducible(poly)) return false;
  const std::uint64_t order = (std::uint64_t{1} << poly.degree()) - 1;
  if (gf2_powmod(2, order, poly) != 1) return false;
  for (std::uint64_t q : prime_factors(order)) {
    if (gf2_powmod(2, order / q, poly) == 1) return false;
  }
  return true;
}

bool is_primitive(int degree, std::uint32_t coefficients) {
  return is_primitive(Gf2Poly(degree, coefficients));
}

}  // namespace lqmc
