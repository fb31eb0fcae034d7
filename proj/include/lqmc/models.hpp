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
#include <istream>
#include <memory>
#include <ostream>
#include <string>

#include <Eigen/Core>

#include "lqmc/potential.hpp"
#include "lqmc/test_function.hpp"

namespace lqmc {

enum class DataKind { kLogistic, kLinear, kCrossed };

std::string_view data_kind_name(DataKind kind);
DataKind parse_data_kind(std::string_view name);

// Synthetic regression data.
//   logistic/linear: design X (N x d), responses y (N), true coefficients
//   beta (d).
//   crossed: X holds the I x J response table Y, y is empty and beta is the
//   generating parameter vector (mu, a_1..a_I, b_1..b_J, log sa^2, log sb^2).
struct SyntheticDataset {
  DataKind kind;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::VectorXd beta;
  std::uint64_t seed;
};

// Sigma_ij = 2^{-|i-j|}.
Eigen::MatrixXd feature_covariance(int d);

// Reproducible from (kind, N, d, seed). For kCrossed, N = I and d = J.
// `noise_variance` is the response variance of the linear model.
SyntheticDataset synthesize_data(DataKind kind, int n_obs, int dim,
                                 std::uint64_t seed,
                                 double noise_variance = 0.25);

// CSV with a small header:
//   kind,N,d,seed
//   linear,20,100,7
//   beta,<values>
//   y,x1,...,xd          (crossed: Y1,...,YJ)
//   <rows>
void write_dataset_csv(std::ostream& out, const SyntheticDataset& data);
SyntheticDataset read_dataset_csv(std::istream& in);

// Isotropic standard normal, U = |theta|^2 / 2, L = M = 1.
class QuadraticPotential final : public Potential {
 public:
  using Potential::gradient;

  explicit QuadraticPotential(int dimension) : dimension_(dimension) {}
  std::string name() const override { return "quadratic"; }
  int dimension() const override { return dimension_; }
  double value(const Eigen::VectorXd& theta) const override;
  void gradient(const Eigen::VectorXd& theta,
                Eigen::Ref<Eigen::VectorXd> out) const override;
  std::optional<SmoothnessConstants> constants() const override {
    return SmoothnessConstants{1.0, 1.0};
  }

 private:
  int dimension_;
};

// Bayesian logistic regression with labels in {0, 1} and prior N(0, I):
//   U(b) = sum_i [log(1 + exp(x_i'b)) - y_i x_i'b] + |b|^2 / 2.
// Declares M = 1 and L = 1 + lambda_max(X'X) / 4.
class LogisticPotential final : public Potential {
 public:
  using Potential::gradient;

  LogisticPotential(Eigen::MatrixXd X, Eigen::VectorXd y);
  std::string name() const override { return "logistic"; }
  int dimension() const override { return static_cast<int>(X_.cols()); }
  double value(const Eigen::VectorXd& theta) const override;
  void gradient(const Eigen::VectorXd& theta,
                Eigen::Ref<Eigen::VectorXd> out) const override;
  std::optional<SmoothnessConstants> constants() const override {
    return constants_;
  }
  Eigen::Index data_size() const override { return X_.rows(); }
  void prior_gradient(const Eigen::VectorXd& theta,
                      Eigen::Ref<Eigen::VectorXd> out) const override;
  void add_datum_gradient(const Eigen::VectorXd& theta, Eigen::Index i,
                          double scale,
                          Eigen::Ref<Eigen::VectorXd> out) const override;

 private:
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  SmoothnessConstants constants_;
};

// Bayesian linear regression, y ~ N(X b, sigma2 I), prior N(0, I):
//   U(b) = |y - X b|^2 / (2 sigma2) + |b|^2 / 2.
// L and M are the extreme eigenvalues of X'X / sigma2 + I.
class LinearRegressionPotential final : public Potential {
 public:
  using Potential::gradient;

  LinearRegressionPotential(Eigen::MatrixXd X, Eigen::VectorXd y,
                            double noise_variance);
  std::string name() const override { return "linear"; }
  int dimension() const override { return static_cast<int>(X_.cols()); }
  double value(const Eigen::VectorXd& theta) const override;
  void gradient(const Eigen::VectorXd& theta,
                Eigen::Ref<Eigen::VectorXd> out) const override;
  std::optional<SmoothnessConstants> constants() const override {
    return constants_;
  }
  Eigen::Index data_size() const override { return X_.rows(); }
  void prior_gradient(const Eigen::VectorXd& theta,
                      Eigen::Ref<Eigen::VectorXd> out) const override;
  void add_datum_gradient(const Eigen::VectorXd& theta, Eigen::Index i,
                          double scale,
                          Eigen::Ref<Eigen::VectorXd> out) const override;

  double noise_variance() const { return noise_variance_; }
  const Eigen::MatrixXd& design() const { return X_; }
  const Eigen::VectorXd& responses() const { return y_; }

 private:
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  double noise_variance_;
  SmoothnessConstants constants_;
};

// Crossed random effects Y_ij ~ N(mu + a_i + b_j, 1), mu ~ N(0, 1),
// a_i ~ N(0, e^{la}), b_j ~ N(0, e^{lb}), la, lb ~ N(0, 1), sampled in
// theta = (mu, a_1..a_I, b_1..b_J, la, lb). Not convex; no constants.
class CrossedEffectsPotential final : public Potential {
 public:
  using Potential::gradient;

  explicit CrossedEffectsPotential(Eigen::MatrixXd Y);
  std::string name() const override { return "crossed"; }
  int dimension() const override {
    return static_cast<int>(Y_.rows() + Y_.cols() + 3);
  }
  double value(const Eigen::VectorXd& theta) const override;
  void gradient(const Eigen::VectorXd& theta,
                Eigen::Ref<Eigen::VectorXd> out) const override;

 private:
  Eigen::MatrixXd Y_;
};

// U(x) = x^2 / 4 - log(1 + x^2) / 2 in one dimension; wells at x = +-1.
class DoubleWellPotential final : public Potential {
 public:
  using Potential::gradient;

  std::string name() const override { return "double_well"; }
  int dimension() const override { return 1; }
  double value(const Eigen::VectorXd& theta) const override;
  void gradient(const Eigen::VectorXd& theta,
                Eigen::Ref<Eigen::VectorXd> out) const override;
};

std::unique_ptr<LogisticPotential> logistic_potential(const SyntheticDataset& data);
std::unique_ptr<LinearRegressionPotential> linear_regression_potential(
    const SyntheticDataset& data, double noise_variance);
std::unique_ptr<CrossedEffectsPotential> crossed_effects_potential(
    const Eigen::MatrixXd& Y);
std::unique_ptr<DoubleWellPotential> double_well_potential();

// Expected values of the three test-function families per coordinate.
// Families that are not available have empty vectors; reference-run truths
// carry per-entry standard errors.
struct GroundTruth {
  enum class Provenance { kClosedForm, kQuadrature, kReferenceRun };

  Provenance provenance;
  Eigen::VectorXd coordinate;
  Eigen::VectorXd square;
  Eigen::VectorXd indicator;
  Eigen::VectorXd coordinate_stderr;
  Eigen::VectorXd square_stderr;
  Eigen::VectorXd indicator_stderr;
  double quadrature_error = 0.0;

  bool has(TestFamily family) const;
  const Eigen::VectorXd& values(TestFamily family) const;
  // Zeros when the truth is exact.
  Eigen::VectorXd standard_errors(TestFamily family) const;
};

std::string_view provenance_name(GroundTruth::Provenance p);

struct GaussianPosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// N((X'X/s2 + I)^{-1} X'y / s2, (X'X/s2 + I)^{-1}).
GaussianPosterior linear_posterior(const Eigen::MatrixXd& X,
                                   const Eigen::VectorXd& y,
                                   double noise_variance);

// E[b_j], E[b_j^2] = mean_j^2 + cov_jj, E[1{b_j > 0}] = Phi(mean_j / sd_j).
GroundTruth closed_form_posterior(const SyntheticDataset& data,
                                  double noise_variance);

// E[x] = 0 and E[1{x > 0}] = 1/2 by symmetry; E[x^2] by adaptive
// Gauss-Kronrod on [-R, R], R chosen so the neglected tail mass is below
// 1e-12.
GroundTruth double_well_truth();
double double_well_truncation_radius();

}  // namespace lqmc
