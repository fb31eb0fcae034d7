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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Every tolerance is a named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lqmc/bench.hpp"
#include "lqmc/discrepancy.hpp"
#include "lqmc/drive.hpp"
#include "lqmc/error.hpp"
#include "lqmc/experiment.hpp"
#include "lqmc/lfsr.hpp"
#include "lqmc/models.hpp"
#include "lqmc/normal.hpp"
#include "lqmc/prng.hpp"
#include "lqmc/sampler.hpp"

namespace {

using namespace lqmc;

constexpr int kIidSets = 100;
constexpr double kQuantileTolerance = 1e-9;
constexpr int kQuantileGrid = 100000;
constexpr double kContractionTolerance = 1e-12;
constexpr double kGradientTolerance = 1e-5;
constexpr int kGradientProbes = 100;
constexpr double kLinearMinRatio = 4.0;
constexpr double kLinearRatioAtTop = 20.0;
constexpr int kLinearTopOrder = 14;
constexpr double kLogisticLmcFraction = 0.5;
constexpr double kLogisticTruthWidening = 9.0;  // (3 reference SE)^2
constexpr double kDoubleWellSigmas = 3.0;
constexpr int kDoubleWellOrder = 16;
constexpr int kCrossedOrder = 14;
constexpr double kRateLqmcMax = -0.75;
constexpr double kRateLmcLow = -1.25;
constexpr double kRateLmcHigh = -0.75;
constexpr double kRateGap = 0.15;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string spec_path(const std::string& name) {
  return std::string(LQMC_SPECS_DIR) + "/" + name;
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

double family_mean(const MseReport& report, Method method, int order,
                   const std::vector<TestFamily>& families) {
  double sum = 0.0;
  for (TestFamily f : families) sum += report.row(method, order, f).mse;
  return sum / static_cast<double>(families.size());
}

Outcome lfsr_period_and_multiset() {
  for (int m = 3; m <= 16; ++m) {
    const auto config = default_config(m);
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    if (lfsr_period(config) != n) return {false, "period m=" + std::to_string(m)};
    const auto seq = generate_cud(config);
    std::vector<std::uint32_t> sorted(seq.numerators().begin(), seq.numerators().end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != n) return {false, "length m=" + std::to_string(m)};
    for (std::uint64_t i = 0; i < n; ++i) {
      if (sorted[i] != i + 1) return {false, "multiset m=" + std::to_string(m)};
    }
  }
  return {true, "m=3..16 period 2^m-1, values {1..2^m-1}/2^m"};
}

Outcome variate_stratification() {
  constexpr int m = 13;
  constexpr int d = 10;
  const auto seq = std::make_shared<const CudSequence>(generate_cud(default_config(m)));
  const auto matrix = unshifted_drive_matrix(seq, d);
  for (int j = 0; j < d; ++j) {
    std::set<std::uint64_t> cells;
    for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
      cells.insert(matrix.fixed_entry(k, j) >> (64 - m));
    }
    if (cells.size() != static_cast<std::size_t>(matrix.rows()) || cells.contains(0)) {
      return {false, "column " + std::to_string(j)};
    }
  }
  return {true, "m=13 d=10: each column hits every nonzero cell once, width " +
                    std::to_string(matrix.stored_width())};
}

Outcome pair_discrepancy() {
  const auto seq = generate_cud(default_config(8));
  const auto values = seq.values();
  const double lfsr = star_discrepancy_2d(overlapping_pairs(values));
  const double lfsr_iid = iid_median_discrepancy(255, 2, kIidSets, 1);
  const double lcg = star_discrepancy_2d(lcg_demo(251, smallest_primitive_root(251)));
  const double lcg_iid = iid_median_discrepancy(250, 2, kIidSets, 2);
  std::ostringstream detail;
  detail << "LFSR m=8 D*=" << fmt("%.4f", lfsr) << " (iid median " << fmt("%.4f", lfsr_iid)
         << "), LCG p=251 D*=" << fmt("%.4f", lcg) << " (iid median "
         << fmt("%.4f", lcg_iid) << ")";
  return {lfsr < lfsr_iid && lcg < lcg_iid, detail.str()};
}

long double cdf_oracle(long double x) {
  return 0.5L * std::erfc(-x / std::sqrt(2.0L));
}

Outcome quantile_accuracy() {
  // Half the grid is linear in u, half log-spaced towards both tails.
  constexpr double lo = 1e-12;
  double worst = 0.0;
  auto check = [&](double u) {
    const long double back = cdf_oracle(inverse_normal_cdf(u));
    worst = std::max(worst, static_cast<double>(std::fabs(back - static_cast<long double>(u))));
  };
  constexpr int half = kQuantileGrid / 2;
  for (int i = 0; i < half; ++i) {
    check(lo + (1.0 - 2.0 * lo) * static_cast<double>(i) / (half - 1));
  }
  for (int i = 0; i < half / 2; ++i) {
    const double u = std::pow(10.0, -12.0 + 11.0 * static_cast<double>(i) / (half / 2 - 1));
    check(u);
    check(1.0 - u);
  }
  return {worst <= kQuantileTolerance,
          "max |Phi(x(u)) - u| " + fmt("%.2e", worst) + " over " +
              std::to_string(kQuantileGrid) + " points in [1e-12, 1-1e-12]"};
}

Outcome coupling_contraction() {
  const QuadraticPotential quadratic(3);
  const double hq = 0.25;
  // Ten steps keep the separation above 0.1, so cancellation between O(1)
  // states stays far below the tolerance.
  const auto q = coupling_diagnostic(quadratic, Eigen::VectorXd::Zero(3),
                                     Eigen::VectorXd::Constant(3, 2.0), hq, 10,
                                     PseudoRandomDrive{5, 0});
  double worst_q = 0.0;
  for (std::size_t k = 1; k < q.distances.size(); ++k) {
    worst_q = std::max(worst_q,
                       std::fabs(q.distances[k] / q.distances[k - 1] - (1.0 - hq)));
  }
  const auto data = synthesize_data(DataKind::kLinear, 20, 100, 2);
  const auto linear = linear_regression_potential(data, 0.25);
  const auto c = *linear->constants();
  const double h = 1.0 / (c.lipschitz + c.convexity);
  const double rho = 1.0 - h * c.convexity;
  const auto l = coupling_diagnostic(*linear, Eigen::VectorXd::Zero(100),
                                     Eigen::VectorXd::Constant(100, 1.0), h, 200,
                                     PseudoRandomDrive{5, 1});
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < l.distances.size(); ++k) {
    worst_ratio = std::max(worst_ratio, l.distances[k] / l.distances[k - 1]);
  }
  std::ostringstream detail;
  detail << "quadratic max|ratio-(1-hM)|=" << fmt("%.1e", worst_q)
         << "; linear h=1/(L+M) max ratio " << fmt("%.6f", worst_ratio) << " <= rho "
         << fmt("%.6f", rho);
  return {worst_q <= kContractionTolerance &&
              worst_ratio <= rho * (1.0 + kContractionTolerance),
          detail.str()};
}

double gradient_error(const Potential& p, const Eigen::VectorXd& theta) {
  const double step = 1e-6 * (1.0 + theta.norm());
  Eigen::VectorXd fd(theta.size());
  Eigen::VectorXd probe = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    probe[j] = theta[j] + step;
    const double up = p.value(probe);
    probe[j] = theta[j] - step;
    const double down = p.value(probe);
    probe[j] = theta[j];
    fd[j] = (up - down) / (2.0 * step);
  }
  const Eigen::VectorXd g = p.gradient(theta);
  return (fd - g).norm() / std::max(g.norm(), 1.0);
}

Outcome gradients() {
  struct Case {
    std::unique_ptr<Potential> potential;
    double scale;
  };
  std::vector<Case> cases;
  cases.push_back({std::make_unique<QuadraticPotential>(7), 2.0});
  cases.push_back({logistic_potential(synthesize_data(DataKind::kLogistic, 20, 10, 3)), 1.0});
  cases.push_back(
      {linear_regression_potential(synthesize_data(DataKind::kLinear, 20, 100, 2), 0.25),
       0.3});
  cases.push_back(
      {crossed_effects_potential(synthesize_data(DataKind::kCrossed, 3, 5, 7).X), 1.0});
  cases.push_back({double_well_potential(), 2.0});
  double worst = 0.0;
  std::uint64_t stream = 0;
  for (const auto& c : cases) {
    BaselinePrng rng(404, stream++);
    for (int probe = 0; probe < kGradientProbes; ++probe) {
      Eigen::VectorXd theta(c.potential->dimension());
      for (Eigen::Index j = 0; j < theta.size(); ++j) theta[j] = c.scale * rng.normal();
      worst = std::max(worst, gradient_error(*c.potential, theta));
    }
  }
  return {worst < kGradientTolerance,
          "max relative finite-difference error " + fmt("%.2e", worst) +
              " over 5 potentials x 100 probes"};
}

Outcome linear_gain() {
  const auto spec = load_experiment(spec_path("linear100_desk.spec"));
  const auto report = run_comparison(spec);
  bool pass = true;
  std::ostringstream detail;
  for (int m : spec.orders) {
    const double lqmc = report.row(Method::kLqmc, m, TestFamily::kCoordinate).mse;
    const double lmc = report.row(Method::kLmc, m, TestFamily::kCoordinate).mse;
    const double ratio = lmc / lqmc;
    pass = pass && ratio >= kLinearMinRatio;
    if (m == kLinearTopOrder) pass = pass && ratio >= kLinearRatioAtTop;
    detail << "m=" << m << " LMC/LQMC=" << fmt("%.1f", ratio) << " ";
  }
  return {pass, detail.str()};
}

Outcome logistic_gain() {
  const auto spec = load_experiment(spec_path("logistic_exact_desk.spec"));
  const auto potential = make_potential(spec);
  const auto truth = ground_truth_for(spec, *potential);
  const auto report = run_comparison(spec, *potential, truth);
  const int m = spec.orders.back();
  double lqmc = 0.0;
  double bound = 0.0;
  for (TestFamily f : spec.tests) {
    const Eigen::VectorXd se = truth.standard_errors(f);
    lqmc += report.row(Method::kLqmc, m, f).mse;
    bound += kLogisticLmcFraction * report.row(Method::kLmc, m, f).mse +
             kLogisticTruthWidening * se.squaredNorm() / static_cast<double>(se.size());
  }
  const double k = static_cast<double>(spec.tests.size());
  std::ostringstream detail;
  detail << "m=" << m << " mean MSE LQMC " << fmt("%.4g", lqmc / k) << " <= "
         << fmt("%.4g", bound / k) << " (LMC/2 + truth noise)";
  return {lqmc <= bound, detail.str()};
}

Outcome double_well_bias() {
  const auto spec = load_experiment(spec_path("double_well_desk.spec"));
  const auto report = run_comparison(spec);
  bool pass = true;
  std::ostringstream detail;
  for (TestFamily f : spec.tests) {
    std::vector<double> est;
    double truth = 0.0;
    for (const auto& r : report.replicates) {
      if (r.method == Method::kLqmc && r.order == kDoubleWellOrder && r.family == f) {
        est.push_back(r.estimate);
        truth = r.truth;
      }
    }
    const double n = static_cast<double>(est.size());
    const double mean = std::accumulate(est.begin(), est.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : est) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (n - 1.0) / n);
    const double z = (mean - truth) / se;
    pass = pass && est.size() >= 2 && std::fabs(z) <= kDoubleWellSigmas;
    detail << family_name(f) << " z=" << fmt("%+.2f", z) << " ";
  }
  return {pass, detail.str()};
}

Outcome crossed_stability() {
  const char* names[] = {"crossed_h1e-2_desk.spec", "crossed_h1e-4_desk.spec",
                         "crossed_decreasing_desk.spec"};
  const auto first = load_experiment(spec_path(names[0]));
  const auto potential = make_potential(first);
  const auto truth = ground_truth_for(first, *potential);
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : names) {
    const auto spec = load_experiment(spec_path(name));
    try {
      const auto report = run_comparison(spec, *potential, truth);
      const double lqmc = family_mean(report, Method::kLqmc, kCrossedOrder, spec.tests);
      const double lmc = family_mean(report, Method::kLmc, kCrossedOrder, spec.tests);
      if (name == names[0]) pass = pass && lqmc <= lmc;
      detail << spec.schedule << (spec.schedule == "constant" ? fmt("(h=%g)", spec.h) : "")
             << " LQMC " << fmt("%.3g", lqmc) << " LMC " << fmt("%.3g", lmc) << "; ";
    } catch (const DivergenceError& e) {
      pass = false;
      detail << name << " diverged: " << e.what() << "; ";
    }
  }
  return {pass, detail.str()};
}

Outcome convergence_rate() {
  const auto spec = load_experiment(spec_path("linear100_rate.spec"));
  const auto report = run_comparison(spec);
  std::vector<std::int64_t> n;
  std::vector<double> lqmc;
  std::vector<double> lmc;
  for (int m : spec.orders) {
    n.push_back(spec.iterations(m));
    lqmc.push_back(report.row(Method::kLqmc, m, TestFamily::kCoordinate).mse);
    lmc.push_back(report.row(Method::kLmc, m, TestFamily::kCoordinate).mse);
  }
  const auto q = pre_plateau_slope(n, lqmc);
  const auto p = pre_plateau_slope(n, lmc);
  std::ostringstream detail;
  detail << "slope LQMC " << fmt("%.3f", q.slope) << " (" << q.points_used
         << " pts), LMC " << fmt("%.3f", p.slope) << " (" << p.points_used << " pts)";
  const bool pass = q.slope <= kRateLqmcMax && p.slope >= kRateLmcLow &&
                    p.slope <= kRateLmcHigh && p.slope - q.slope >= kRateGap;
  return {pass, detail.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"lfsr-period-multiset", lfsr_period_and_multiset},
      {"variate-stratification", variate_stratification},
      {"pair-discrepancy", pair_discrepancy},
      {"gaussian-quantile", quantile_accuracy},
      {"coupling-contraction", coupling_contraction},
      {"potential-gradients", gradients},
      {"linear-mse-gain", linear_gain},
      {"logistic-mse-gain", logistic_gain},
      {"double-well-bias", double_well_bias},
      {"crossed-stability", crossed_stability},
      {"convergence-rate", convergence_rate},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::printf("%s %s: %s [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
