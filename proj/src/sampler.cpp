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

#include "lqmc/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

#include "lqmc/csv.hpp"
#include "lqmc/prng.hpp"

namespace lqmc {
namespace {

// Yields xi_1, xi_2, ... for one chain.
class NoiseSource {
 public:
  NoiseSource(const DriveSpec& drive, int dimension)
      : drive_(drive), dimension_(dimension) {
    if (const auto* p = std::get_if<PseudoRandomDrive>(&drive_)) {
      rng_.emplace(p->seed, p->stream);
    }
  }

  void next(Eigen::Ref<Eigen::VectorXd> xi) {
    if (rng_) {
      for (int j = 0; j < dimension_; ++j) xi[j] = rng_->normal();
    } else if (const auto* c = std::get_if<CudDrive>(&drive_)) {
      gaussian_row(*c->matrix, row_, xi);
    } else {
      xi = std::get<ExplicitDrive>(drive_).xi->row(row_);
    }
    ++row_;
  }

 private:
  DriveSpec drive_;
  int dimension_;
  std::optional<BaselinePrng> rng_;
  Eigen::Index row_ = 0;
};

Eigen::Index drive_rows(const DriveSpec& drive) {
  if (const auto* c = std::get_if<CudDrive>(&drive)) return c->matrix->rows();
  if (const auto* e = std::get_if<ExplicitDrive>(&drive)) return e->xi->rows();
  return -1;
}

int drive_dimension(const DriveSpec& drive) {
  if (const auto* c = std::get_if<CudDrive>(&drive)) return c->matrix->dimension();
  if (const auto* e = std::get_if<ExplicitDrive>(&drive)) return e->xi->dimension();
  return -1;
}

void validate_drive(const DriveSpec& drive, int dimension,
                    std::int64_t iterations) {
  if (const auto* c = std::get_if<CudDrive>(&drive); c && !c->matrix) {
    throw ConfigError("CUD drive has no matrix");
  }
  if (const auto* e = std::get_if<ExplicitDrive>(&drive); e && !e->xi) {
    throw ConfigError("explicit drive has no values");
  }
  const int d = drive_dimension(drive);
  if (d >= 0 && d != dimension) {
    throw ConfigError("drive dimension " + std::to_string(d) +
                      " does not match chain dimension " +
                      std::to_string(dimension));
  }
  const Eigen::Index rows = drive_rows(drive);
  if (rows >= 0 && rows < iterations) {
    throw ConfigError("drive has " + std::to_string(rows) + " rows but " +
                      std::to_string(iterations) + " iterations requested");
  }
}

// Sample `count` distinct indices from [0, n) (Floyd's algorithm), sorted.
void sample_without_replacement(BaselinePrng& rng, Eigen::Index n, int count,
                                std::vector<Eigen::Index>& out) {
  out.clear();
  for (Eigen::Index j = n - count; j < n; ++j) {
    const auto t = static_cast<Eigen::Index>(
        rng.below(static_cast<std::uint64_t>(j + 1)));
    if (std::find(out.begin(), out.end(), t) == out.end()) {
      out.push_back(t);
    } else {
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

void validate(const ChainConfig& config, const Potential& potential) {
  if (config.dimension != potential.dimension()) {
    throw ConfigError("chain dimension " + std::to_string(config.dimension) +
                      " does not match potential dimension " +
                      std::to_string(potential.dimension()));
  }
  if (config.initial.size() != config.dimension) {
    throw ConfigError("initial point has the wrong dimension");
  }
  if (!config.initial.allFinite()) throw ConfigError("initial point not finite");
  if (config.iterations < 0) throw ConfigError("iteration count must be >= 0");
  if (config.first_iteration < 1) throw ConfigError("first_iteration must be >= 1");
  validate_drive(config.drive, config.dimension, config.iterations);
  if (config.minibatch < 0) throw ConfigError("minibatch size must be >= 0");
  if (config.minibatch > 0) {
    if (potential.data_size() == 0) {
      throw ConfigError(potential.name() +
                        " potential does not support stochastic gradients");
    }
    if (config.minibatch > potential.data_size()) {
      throw ConfigError("minibatch larger than the dataset");
    }
  }
}

Eigen::VectorXd run_chain_streaming(const Potential& potential,
                                    const ChainConfig& config,
                                    const StateVisitor& visit) {
  validate(config, potential);
  const int d = config.dimension;
  NoiseSource noise(config.drive, d);
  std::optional<BaselinePrng> batch_rng;
  std::vector<Eigen::Index> batch;
  double batch_scale = 0.0;
  if (config.minibatch > 0) {
    batch_rng.emplace(config.minibatch_seed, config.minibatch_stream);
    batch_scale = static_cast<double>(potential.data_size()) / config.minibatch;
  }

  Eigen::VectorXd theta = config.initial;
  Eigen::VectorXd grad(d);
  Eigen::VectorXd xi(d);
  for (std::int64_t k = 1; k <= config.iterations; ++k) {
    if (batch_rng) {
      potential.prior_gradient(theta, grad);
      sample_without_replacement(*batch_rng, potential.data_size(),
                                 config.minibatch, batch);
      for (Eigen::Index i : batch) {
        potential.add_datum_gradient(theta, i, batch_scale, grad);
      }
    } else {
      potential.gradient(theta, grad);
    }
    noise.next(xi);
    const double h = config.schedule(config.first_iteration + k - 1);
    theta -= h * grad;
    theta += std::sqrt(2.0 * h) * xi;
    const double norm = theta.norm();
    if (!(norm <= kDivergenceThreshold)) throw DivergenceError(k);
    visit(k, theta);
  }
  return theta;
}

Eigen::VectorXd ChainRun::final_state() const {
  if (trajectory.rows() == 0) return config.initial;
  return trajectory.row(trajectory.rows() - 1).transpose();
}

ChainRun run_chain(const Potential& potential, const ChainConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ChainRun run;
  run.config = config;
  run.trajectory.resize(config.iterations, config.dimension);
  run_chain_streaming(potential, config,
                      [&](std::int64_t k, const Eigen::VectorXd& theta) {
                        run.trajectory.row(k - 1) = theta.transpose();
                      });
  run.segment_lengths.push_back(config.iterations);
  run.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return run;
}

ChainRun continue_chain(const Potential& potential, const ChainRun& run,
                        const DriveSpec& next_drive,
                        std::int64_t extra_iterations) {
  if (extra_iterations == 0) return run;
  const int d = drive_dimension(next_drive);
  if (d >= 0 && d != run.config.dimension) {
    throw ConfigError("continuation drive dimension mismatch");
  }
  ChainConfig next = run.config;
  next.initial = run.final_state();
  next.drive = next_drive;
  next.iterations = extra_iterations;
  next.first_iteration = run.config.first_iteration + run.config.iterations;
  if (next.minibatch > 0) ++next.minibatch_stream;
  ChainRun segment = run_chain(potential, next);

  ChainRun combined;
  combined.config = next;
  combined.trajectory.resize(run.size() + segment.size(), run.config.dimension);
  combined.trajectory.topRows(run.size()) = run.trajectory;
  combined.trajectory.bottomRows(segment.size()) = segment.trajectory;
  combined.segment_lengths = run.segment_lengths;
  combined.segment_lengths.push_back(extra_iterations);
  combined.wall_seconds = run.wall_seconds + segment.wall_seconds;
  return combined;
}

CouplingReport coupling_diagnostic(const Potential& potential,
                                   const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& theta_prime, double h,
                                   std::int64_t steps,
                                   const DriveSpec& shared_drive) {
  const int d = potential.dimension();
  if (theta.size() != d || theta_prime.size() != d) {
    throw ConfigError("coupling start points have the wrong dimension");
  }
  if (!(h > 0.0)) throw ConfigError("step size must be positive");
  validate_drive(shared_drive, d, steps);

  CouplingReport report;
  const double initial = (theta - theta_prime).norm();
  if (const auto c = potential.constants()) {
    const double rho = 1.0 - h * c->convexity;
    report.contraction = rho;
    report.step_condition_met = h <= 2.0 / (c->lipschitz + c->convexity);
    if (rho > 0.0 && rho < 1.0) {
      report.truncation_lag =
          static_cast<int>(std::ceil(0.5 * std::log(h) / std::log(rho)));
    }
    report.envelope.reserve(static_cast<std::size_t>(steps + 1));
    for (std::int64_t k = 0; k <= steps; ++k) {
      report.envelope.push_back(initial *
                                std::pow(std::abs(rho), static_cast<double>(k)));
    }
  }

  NoiseSource noise(shared_drive, d);
  Eigen::VectorXd a = theta;
  Eigen::VectorXd b = theta_prime;
  Eigen::VectorXd ga(d), gb(d), xi(d);
  const double scale = std::sqrt(2.0 * h);
  report.distances.reserve(static_cast<std::size_t>(steps + 1));
  report.distances.push_back(initial);
  for (std::int64_t k = 1; k <= steps; ++k) {
    potential.gradient(a, ga);
    potential.gradient(b, gb);
    noise.next(xi);
    a += scale * xi - h * ga;
    b += scale * xi - h * gb;
    if (!(a.norm() <= kDivergenceThreshold) ||
        !(b.norm() <= kDivergenceThreshold)) {
      throw DivergenceError(k);
    }
    report.distances.push_back((a - b).norm());
  }
  return report;
}

void write_trajectory_csv(std::ostream& out, const ChainRun& run) {
  out << "iteration";
  for (Eigen::Index j = 0; j < run.trajectory.cols(); ++j) {
    out << ",theta" << (j + 1);
  }
  out << '\n';
  for (Eigen::Index k = 0; k < run.trajectory.rows(); ++k) {
    out << (k + 1);
    for (Eigen::Index j = 0; j < run.trajectory.cols(); ++j) {
      out << ',' << format_double(run.trajectory(k, j));
    }
    out << '\n';
  }
}

}  // namespace lqmc
