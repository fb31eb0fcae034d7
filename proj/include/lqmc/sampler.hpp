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

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "lqmc/drive.hpp"
#include "lqmc/error.hpp"
#include "lqmc/potential.hpp"
#include "lqmc/schedule.hpp"

namespace lqmc {

// One Euler-Maruyama step of the Langevin diffusion:
//   theta - h * gradient + sqrt(2 h) * xi.
// Throws NumericError on non-finite input or h <= 0, DomainError on
// mismatched sizes.
template <typename Theta, typename Grad, typename Xi>
typename Theta::PlainObject lmc_step(const Eigen::MatrixBase<Theta>& theta,
                                     const Eigen::MatrixBase<Grad>& gradient,
                                     typename Theta::Scalar h,
                                     const Eigen::MatrixBase<Xi>& xi) {
  using Scalar = typename Theta::Scalar;
  if (theta.size() != gradient.size() || theta.size() != xi.size()) {
    throw DomainError("lmc_step: dimension mismatch");
  }
  if (!(h > Scalar(0)) || !std::isfinite(h) || !theta.allFinite() ||
      !gradient.allFinite() || !xi.allFinite()) {
    throw NumericError("lmc_step: non-finite input or non-positive step");
  }
  return theta - h * gradient + std::sqrt(Scalar(2) * h) * xi;
}

// i.i.d. N(0, I) perturbations from BaselinePrng(seed, stream).
struct PseudoRandomDrive {
  std::uint64_t seed;
  std::uint64_t stream;
};

// Row k of the Gaussian transform of a variate matrix drives iteration k.
struct CudDrive {
  std::shared_ptr<const DriveMatrix> matrix;
};

// Caller-supplied perturbations (also used for the zero drive).
struct ExplicitDrive {
  std::shared_ptr<const GaussianDrive> xi;
};

using DriveSpec = std::variant<PseudoRandomDrive, CudDrive, ExplicitDrive>;

struct ChainConfig {
  int dimension = 1;
  Eigen::VectorXd initial;
  std::int64_t iterations = 1;
  StepSchedule schedule = StepSchedule::constant(1e-3);
  DriveSpec drive = PseudoRandomDrive{0, 0};
  // Minibatch size for stochastic gradients; 0 means exact gradients.
  int minibatch = 0;
  // Minibatch indices always come from this stream, never from the drive.
  std::uint64_t minibatch_seed = 0;
  std::uint64_t minibatch_stream = 0;
  // Schedule index of the first iteration (continuations keep counting).
  std::int64_t first_iteration = 1;
};

// Throws ConfigError when the config is inconsistent with itself or with
// the potential.
void validate(const ChainConfig& config, const Potential& potential);

struct ChainRun {
  RowMajorMatrixXd trajectory;  // row k-1 holds theta_k
  ChainConfig config;           // of the last segment
  std::vector<std::int64_t> segment_lengths;
  double wall_seconds = 0.0;

  std::int64_t size() const { return trajectory.rows(); }
  Eigen::VectorXd final_state() const;
};

inline constexpr double kDivergenceThreshold = 1e8;

// Called with the 1-based iteration index and theta_k.
using StateVisitor =
    std::function<void(std::int64_t, const Eigen::VectorXd&)>;

// Runs the chain without storing it; returns theta_n. Throws
// DivergenceError when |theta_k| exceeds kDivergenceThreshold or turns
// non-finite.
Eigen::VectorXd run_chain_streaming(const Potential& potential,
                                    const ChainConfig& config,
                                    const StateVisitor& visit);

ChainRun run_chain(const Potential& potential, const ChainConfig& config);

// Continues from the final state of `run` for `extra_iterations` more steps
// with a new drive, appending to the trajectory.
ChainRun continue_chain(const Potential& potential, const ChainRun& run,
                        const DriveSpec& next_drive,
                        std::int64_t extra_iterations);

struct CouplingReport {
  std::vector<double> distances;           // |theta_k - theta'_k|, k = 0..steps
  std::optional<double> contraction;       // rho = 1 - h M
  std::optional<int> truncation_lag;       // ceil(log_rho(h) / 2)
  std::optional<bool> step_condition_met;  // h <= 2 / (L + M)
  std::vector<double> envelope;            // |theta_0 - theta'_0| rho^k
};

// Two chains from theta and theta_prime fed identical perturbations.
CouplingReport coupling_diagnostic(const Potential& potential,
                                   const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& theta_prime, double h,
                                   std::int64_t steps,
                                   const DriveSpec& shared_drive);

// Iteration and theta coordinates, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const ChainRun& run);

}  // namespace lqmc
