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

#include <span>
#include <vector>

#include <Eigen/Core>

namespace lqmc {

// N points in [0,1)^d, one per row.
class PointSet {
 public:
  // Throws DomainError if any coordinate falls outside [0, 1).
  explicit PointSet(Eigen::MatrixXd points);

  Eigen::Index size() const { return points_.rows(); }
  Eigen::Index dimension() const { return points_.cols(); }
  const Eigen::MatrixXd& points() const { return points_; }

 private:
  Eigen::MatrixXd points_;
};

PointSet make_point_set_1d(std::span<const double> values);

// Cyclic overlapping pairs (v_i, v_{(i+1) mod N}), i = 0..N-1.
PointSet overlapping_pairs(std::span<const double> values);

// Exact star discrepancy, sorted-points formula. O(N log N).
double star_discrepancy_1d(const PointSet& points);

inline constexpr Eigen::Index kMaxDiscrepancy2dPoints = Eigen::Index{1} << 14;

// Exact star discrepancy over anchored boxes [0,a) x [0,b), evaluated on the
// grid of critical corners. O(N^2); throws SizeError above
// kMaxDiscrepancy2dPoints.
double star_discrepancy_2d(const PointSet& points);

}  // namespace lqmc
