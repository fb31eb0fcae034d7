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
#include <functional>

namespace lqmc {

struct QuadratureResult {
  double value;
  double error;  // estimated absolute error
};

// Globally adaptive Gauss-Kronrod (7, 15) on [a, b]: the interval with the
// largest error estimate is bisected until the summed estimate drops below
// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f,
                                         double a, double b, double abs_tol,
                                         double rel_tol = 0.0,
                                         int max_intervals = 2000);

}  // namespace lqmc
