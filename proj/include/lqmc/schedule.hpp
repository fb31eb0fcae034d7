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
#include <string>

namespace lqmc {

// Step size h_k for iteration k >= 1: either constant, or
// h_k = c0 * (c1 + k)^exponent.
class StepSchedule {
 public:
  enum class Kind { kConstant, kPolynomial };

  static StepSchedule constant(double h);
  // Throws ConfigError unless c0 > 0 and c1 > -1 (so every h_k > 0).
  static StepSchedule polynomial(double c0, double c1,
                                 double exponent = -1.0 / 3.0);
  // Polynomial schedule with h_1 = first and h_n = last. For n = 1 only the
  // first endpoint can be honoured and the schedule is constant.
  static StepSchedule from_endpoints(double first, double last, std::int64_t n,
                                     double exponent = -1.0 / 3.0);

  Kind kind() const { return kind_; }
  double c0() const { return c0_; }
  double c1() const { return base_ - 1.0; }
  double exponent() const { return exponent_; }

  double operator()(std::int64_t k) const;

  std::string describe() const;

 private:
  StepSchedule(Kind kind, double c0, double base, double exponent)
      : kind_(kind), c0_(c0), base_(base), exponent_(exponent) {}

  Kind kind_;
  double c0_;  // h for constant schedules
  // c1 + 1, kept directly: endpoint fits put c1 close to -1.
  double base_;
  double exponent_;
};

}  // namespace lqmc
