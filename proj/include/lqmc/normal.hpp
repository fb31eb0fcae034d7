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

namespace lqmc {

// Standard normal CDF, 0.5 * erfc(-x / sqrt(2)).
double normal_cdf(double x);

// Standard normal quantile. A rational approximation (relative error about
// 1e-9) followed by one Halley step against normal_cdf, giving
// |normal_cdf(z) - u| well below 1e-9. Arguments above 1/2 are reflected, so
// inverse_normal_cdf(1 - u) == -inverse_normal_cdf(u) whenever 1 - u is
// exact. Throws DomainError unless 0 < u < 1.
double inverse_normal_cdf(double u);

// Clamp used before transforming drive uniforms: [2^-53, 1 - 2^-53].
double clamp_open_unit(double u);

}  // namespace lqmc
