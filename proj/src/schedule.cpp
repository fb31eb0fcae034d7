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

#include "lqmc/schedule.hpp"

#include <cmath>

#include "lqmc/csv.hpp"
#include "lqmc/error.hpp"

namespace lqmc {

StepSchedule StepSchedule::constant(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ConfigError("step size must be positive");
  }
  return StepSchedule(Kind::kConstant, h, 1.0, 0.0);
}

StepSchedule StepSchedule::polynomial(double c0, double c1, double exponent) {
  if (!(c0 > 0.0) || !(c1 > -1.0) || !std::isfinite(c0) ||
      !std::isfinite(c1) || !std::isfinite(exponent)) {
    throw ConfigError("polynomial schedule needs c0 > 0 and c1 > -1");
  }
  return StepSchedule(Kind::kPolynomial, c0, c1 + 1.0, exponent);
}

StepSchedule StepSchedule::from_endpoints(double first, double last,
                                          std::int64_t n, double exponent) {
  if (!(first > 0.0) || !(last > 0.0) || n < 1) {
    throw ConfigError("schedule endpoints must be positive and n >= 1");
  }
  if (n == 1 || first == last || exponent == 0.0) return constant(first);
  // (c1 + n) / (c1 + 1) = (last / first)^(1 / exponent)
  const double ratio = std::pow(last / first, 1.0 / exponent);
  if (!(ratio > 1.0)) {
    throw ConfigError("endpoints incompatible with the exponent's sign");
  }
  const double nn = static_cast<double>(n);
  const double base = (nn - 1.0) / (ratio - 1.0);  // c1 + 1
  const double c0 = first * std::pow(base, -exponent);
  if (!(c0 > 0.0) || !std::isfinite(c0) || !(base > 0.0)) {
    throw ConfigError("schedule endpoints out of representable range");
  }
  return StepSchedule(Kind::kPolynomial, c0, base, exponent);
}

double StepSchedule::operator()(std::int64_t k) const {
  if (kind_ == Kind::kConstant) return c0_;
  return c0_ * std::pow(base_ + static_cast<double>(k - 1), exponent_);
}

std::string StepSchedule::describe() const {
  if (kind_ == Kind::kConstant) return "constant(h=" + format_double(c0_) + ")";
  return "polynomial(c0=" + format_double(c0_) + ";c1=" + format_double(c1()) +
         ";exponent=" + format_double(exponent_) + ")";
}

}  // namespace lqmc
