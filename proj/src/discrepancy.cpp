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

#include "lqmc/discrepancy.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lqmc/error.hpp"

namespace lqmc {

PointSet::PointSet(Eigen::MatrixXd points) : points_(std::move(points)) {
  if ((points_.array() < 0.0).any() || (points_.array() >= 1.0).any() ||
      !points_.allFinite()) {
    throw DomainError("point coordinates must lie in [0, 1)");
  }
}

PointSet make_point_set_1d(std::span<const double> values) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(static_cast<Eigen::Index>(i), 0) = values[i];
  }
  return PointSet(std::move(m));
}

PointSet overlapping_pairs(std::span<const double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Eigen::MatrixXd m(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, 0) = values[static_cast<std::size_t>(i)];
    m(i, 1) = values[static_cast<std::size_t>((i + 1) % n)];
  }
  return PointSet(std::move(m));
}

double star_discrepancy_1d(const PointSet& points) {
  if (points.dimension() != 1) throw DomainError("expected a 1-d point set");
  const Eigen::Index n = points.size();
  if (n == 0) throw DomainError("star discrepancy of an empty point set");
  std::vector<double> u(points.points().data(), points.points().data() + n);
  std::sort(u.begin(), u.end());
  const double inv_n = 1.0 / static_cast<double>(n);
  double d = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ui = u[static_cast<std::size_t>(i)];
    d = std::max({d, static_cast<double>(i + 1) * inv_n - ui,
                  ui - static_cast<double>(i) * inv_n});
  }
  return d;
}

double star_discrepancy_2d(const PointSet& points) {
  if (points.dimension() != 2) throw DomainError("expected a 2-d point set");
  const Eigen::Index n = points.size();
  if (n == 0) throw DomainError("star discrepancy of an empty point set");
  if (n > kMaxDiscrepancy2dPoints) {
    throw SizeError("2-d star discrepancy limited to " +
                    std::to_string(kMaxDiscrepancy2dPoints) + " points, got " +
                    std::to_string(n) + "; subsample first");
  }
  const auto& p = points.points();

  std::vector<double> ys(p.col(1).data(), p.col(1).data() + n);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t k = ys.size();

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p(a, 0) < p(b, 0); });
  std::vector<std::size_t> rank(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    rank[static_cast<std::size_t>(i)] = static_cast<std::size_t>(
        std::lower_bound(ys.begin(), ys.end(), p(i, 1)) - ys.begin());
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<long> count(k, 0);  // points with x < a (then x <= a) per y rank
  double d = 0.0;

  // Open boxes: vol - #{x < a, y < b} / N, b over ys and 1.
  auto scan_open = [&](double a) {
    long below = 0;
    for (std::size_t r = 0; r < k; ++r) {
      d = std::max(d, a * ys[r] - static_cast<double>(below) * inv_n);
      below += count[r];
    }
    d = std::max(d, a - static_cast<double>(below) * inv_n);
  };
  // Closed boxes: #{x <= a, y <= b} / N - vol, b over ys.
  auto scan_closed = [&](double a) {
    long at_or_below = 0;
    for (std::size_t r = 0; r < k; ++r) {
      at_or_below += count[r];
      d = std::max(d, static_cast<double>(at_or_below) * inv_n - a * ys[r]);
    }
  };

  std::size_t next = 0;
  while (next < order.size()) {
    const double a = p(order[next], 0);
    scan_open(a);
    while (next < order.size() && p(order[next], 0) == a) {
      ++count[rank[order[next]]];
      ++next;
    }
    scan_closed(a);
  }
  scan_open(1.0);
  return std::min(d, 1.0);
}

}  // namespace lqmc
