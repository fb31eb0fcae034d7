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
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lqmc/discrepancy.hpp"
#include "lqmc/experiment.hpp"
#include "lqmc/models.hpp"
#include "lqmc/sampler.hpp"
#include "lqmc/test_function.hpp"

namespace lqmc {

// mu_hat = mean of f(theta_k) over k = discard+1 .. n. Throws DomainError
// when nothing is left to average or the coordinate is out of range.
double estimate(const ChainRun& run, const TestFunction& f,
                std::int64_t discard = 0);

enum class Method { kLmc, kLqmc };
std::string_view method_name(Method method);

struct MseRow {
  std::string model;
  Method method;
  int order;
  std::int64_t iterations;
  std::string schedule;
  TestFamily family;
  double mse;
  double standard_error;
  int replicates;
};

// Per-coordinate estimates behind every MseRow.
struct ReplicateRecord {
  Method method;
  int order;
  int replicate;
  TestFamily family;
  int coordinate;
  double estimate;
  double truth;
};

struct MseReport {
  std::string model;
  std::vector<MseRow> rows;
  std::vector<ReplicateRecord> replicates;
  // Resolved configuration: polynomials, offsets, d', schedules, lag and
  // coprimality diagnostics.
  std::vector<std::pair<std::string, std::string>> metadata;
  GroundTruth truth;

  // Throws std::out_of_range when absent.
  const MseRow& row(Method method, int order, TestFamily family) const;
};

// Ground truth for the spec's model: closed form (linear, quadratic),
// quadrature (double_well), otherwise a long reference run per the [truth]
// section. Throws ConfigError when none is available.
GroundTruth ground_truth_for(const ExperimentSpec& spec,
                             const Potential& potential, int threads = 1);

// Averages of the three test-function families over `seeds` pseudo-random
// chains of 2^log2n steps with constant step h, after discarding `discard`
// steps each. Standard errors are across seeds.
GroundTruth reference_run_truth(const Potential& potential, double h,
                                int log2n, int seeds, std::uint64_t seed,
                                std::int64_t discard,
                                const Eigen::VectorXd& initial, int threads = 1);

// Builds the spec's potential (synthesizing or loading data).
std::unique_ptr<Potential> make_potential(const ExperimentSpec& spec);

// For each order m: `replicates` LQMC chains (fresh Cranley-Patterson
// shifts over one deterministic CUD skeleton) and as many LMC chains
// (independent streams). Per replicate the squared errors are averaged over
// coordinates; rows report the mean over replicates and its standard error.
// Seeds and shifts derive from (spec.seed, order, replicate), so the report
// is reproducible for any thread count.
MseReport run_comparison(const ExperimentSpec& spec, int threads = 1);
MseReport run_comparison(const ExperimentSpec& spec, const Potential& potential,
                         const GroundTruth& truth, int threads = 1);

// model,method,m,n,schedule,test_fn,mse,stderr,replicates
void write_report_csv(std::ostream& out, const MseReport& report);
// method,m,replicate,test_fn,coordinate,estimate,truth
void write_replicates_csv(std::ostream& out, const MseReport& report);
// key = value lines.
void write_metadata(std::ostream& out, const MseReport& report);

// Least-squares slope of log(mse) against log(n) over the points before the
// curve flattens. The plateau is the trailing run of points whose MSE
// exceeds 0.75 times their predecessor's; it is dropped. Needs at least two
// remaining points.
struct SlopeFit {
  double slope;
  std::size_t points_used;
};
SlopeFit pre_plateau_slope(const std::vector<std::int64_t>& iterations,
                           const std::vector<double>& mse);

bool is_prime(std::uint64_t p);
bool is_primitive_root(std::uint64_t a, std::uint64_t p);
std::uint64_t smallest_primitive_root(std::uint64_t p);

// x_{i+1} = a x_i mod p from x_0 = seed, one full period (p - 1 values).
// Throws ConfigError unless p is prime, a is a primitive root and
// 1 <= seed < p.
std::vector<std::uint64_t> lcg_sequence(std::uint64_t p, std::uint64_t a,
                                        std::uint64_t seed);
// Overlapping pairs (x_i / p, x_{i+1} / p), cyclic, p - 1 points.
PointSet lcg_demo(std::uint64_t p, std::uint64_t a, std::uint64_t seed = 1);

// Median 2-d (or 1-d) star discrepancy of `sets` i.i.d. uniform point sets
// of `size` points from BaselinePrng(seed, i).
double iid_median_discrepancy(Eigen::Index size, int dimension, int sets,
                              std::uint64_t seed);

}  // namespace lqmc
