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

#include "lqmc/models.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "lqmc/csv.hpp"
#include "lqmc/error.hpp"
#include "lqmc/normal.hpp"
#include "lqmc/prng.hpp"
#include "lqmc/quadrature.hpp"

namespace lqmc {

void Potential::prior_gradient(const Eigen::VectorXd&,
                               Eigen::Ref<Eigen::VectorXd>) const {
  throw ConfigError(name() + " potential does not support stochastic gradients");
}

void Potential::add_datum_gradient(const Eigen::VectorXd&, Eigen::Index,
                                   double, Eigen::Ref<Eigen::VectorXd>) const {
  throw ConfigError(name() + " potential does not support stochastic gradients");
}

std::string_view family_name(TestFamily family) {
  switch (family) {
    case TestFamily::kCoordinate:
      return "coordinate";
    case TestFamily::kSquare:
      return "square";
    case TestFamily::kIndicator:
      return "indicator";
  }
  return "?";
}

TestFamily parse_family(std::string_view name) {
  if (name == "coordinate" || name == "x") return TestFamily::kCoordinate;
  if (name == "square" || name == "x2") return TestFamily::kSquare;
  if (name == "indicator" || name == "ind") return TestFamily::kIndicator;
  throw ConfigError("unknown test function '" + std::string(name) + "'");
}

std::string_view data_kind_name(DataKind kind) {
  switch (kind) {
    case DataKind::kLogistic:
      return "logistic";
    case DataKind::kLinear:
      return "linear";
    case DataKind::kCrossed:
      return "crossed";
  }
  return "?";
}

DataKind parse_data_kind(std::string_view name) {
  if (name == "logistic") return DataKind::kLogistic;
  if (name == "linear") return DataKind::kLinear;
  if (name == "crossed") return DataKind::kCrossed;
  throw ConfigError("unknown data kind '" + std::string(name) + "'");
}

Eigen::MatrixXd feature_covariance(int d) {
  Eigen::MatrixXd sigma(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) sigma(i, j) = std::ldexp(1.0, -std::abs(i - j));
  }
  return sigma;
}

namespace {

Eigen::VectorXd normals(BaselinePrng& rng, Eigen::Index n) {
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal();
  return z;
}

double log1p_exp(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

SyntheticDataset synthesize_data(DataKind kind, int n_obs, int dim,
                                 std::uint64_t seed, double noise_variance) {
  if (n_obs < 1 || dim < 1) throw ConfigError("dataset sizes must be positive");
  SyntheticDataset data{kind, {}, {}, {}, seed};
  BaselinePrng param_rng(seed, 0);
  BaselinePrng feature_rng(seed, 1);
  BaselinePrng response_rng(seed, 2);

  if (kind == DataKind::kCrossed) {
    const int rows = n_obs;
    const int cols = dim;
    const double mu = param_rng.normal();
    const double log_var_a = param_rng.normal();
    const double log_var_b = param_rng.normal();
    const Eigen::VectorXd a = std::exp(0.5 * log_var_a) * normals(param_rng, rows);
    const Eigen::VectorXd b = std::exp(0.5 * log_var_b) * normals(param_rng, cols);
    data.X.resize(rows, cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        data.X(i, j) = mu + a[i] + b[j] + response_rng.normal();
      }
    }
    data.beta.resize(rows + cols + 3);
    data.beta << mu, a, b, log_var_a, log_var_b;
    return data;
  }

  data.beta = normals(param_rng, dim);
  const Eigen::MatrixXd factor = feature_covariance(dim).llt().matrixL();
  data.X.resize(n_obs, dim);
  for (int i = 0; i < n_obs; ++i) {
    data.X.row(i) = (factor * normals(feature_rng, dim)).transpose();
  }
  const Eigen::VectorXd eta = data.X * data.beta;
  data.y.resize(n_obs);
  for (int i = 0; i < n_obs; ++i) {
    if (kind == DataKind::kLogistic) {
      data.y[i] = response_rng.uniform() < logistic(eta[i]) ? 1.0 : 0.0;
    } else {
      data.y[i] = eta[i] + std::sqrt(noise_variance) * response_rng.normal();
    }
  }
  return data;
}

void write_dataset_csv(std::ostream& out, const SyntheticDataset& data) {
  const bool crossed = data.kind == DataKind::kCrossed;
  out << "kind,N,d,seed\n"
      << data_kind_name(data.kind) << ',' << data.X.rows() << ','
      << data.X.cols() << ',' << data.seed << '\n';
  out << "beta";
  for (Eigen::Index j = 0; j < data.beta.size(); ++j) {
    out << ',' << format_double(data.beta[j]);
  }
  out << '\n';
  if (!crossed) out << "y";
  for (Eigen::Index j = 0; j < data.X.cols(); ++j) {
    out << ((crossed && j == 0) ? "" : ",") << (crossed ? "Y" : "x") << (j + 1);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    if (!crossed) out << format_double(data.y[i]);
    for (Eigen::Index j = 0; j < data.X.cols(); ++j) {
      out << ((crossed && j == 0) ? "" : ",") << format_double(data.X(i, j));
    }
    out << '\n';
  }
}

SyntheticDataset read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  auto next_line = [&]() -> std::vector<std::string> {
    if (!std::getline(in, line)) {
      throw ParseError("unexpected end of dataset file", line_number + 1);
    }
    ++line_number;
    return split_csv_line(line);
  };
  auto header = next_line();
  if (header.size() != 4 || header[0] != "kind") {
    throw ParseError("expected header 'kind,N,d,seed'", line_number);
  }
  auto meta = next_line();
  if (meta.size() != 4) throw ParseError("expected 4 header values", line_number);
  SyntheticDataset data;
  data.kind = parse_data_kind(meta[0]);
  const auto n = parse_integer(meta[1], line_number);
  const auto d = parse_integer(meta[2], line_number);
  data.seed = static_cast<std::uint64_t>(parse_integer(meta[3], line_number));
  if (n < 1 || d < 1) throw ParseError("sizes must be positive", line_number);
  const bool crossed = data.kind == DataKind::kCrossed;

  auto beta = next_line();
  if (beta.empty() || beta[0] != "beta") {
    throw ParseError("expected 'beta' row", line_number);
  }
  const std::size_t beta_size =
      crossed ? static_cast<std::size_t>(n + d + 3) : static_cast<std::size_t>(d);
  if (beta.size() != beta_size + 1) {
    throw ParseError("beta row has wrong length", line_number);
  }
  data.beta.resize(static_cast<Eigen::Index>(beta_size));
  for (std::size_t j = 0; j < beta_size; ++j) {
    data.beta[static_cast<Eigen::Index>(j)] = parse_double(beta[j + 1], line_number);
  }
  next_line();  // column names
  data.X.resize(n, d);
  if (!crossed) data.y.resize(n);
  const std::size_t width = static_cast<std::size_t>(d) + (crossed ? 0 : 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto row = next_line();
    if (row.size() != width) throw ParseError("row has wrong length", line_number);
    std::size_t col = 0;
    if (!crossed) data.y[i] = parse_double(row[col++], line_number);
    for (Eigen::Index j = 0; j < d; ++j) {
      data.X(i, j) = parse_double(row[col++], line_number);
    }
  }
  return data;
}

double QuadraticPotential::value(const Eigen::VectorXd& theta) const {
  return 0.5 * theta.squaredNorm();
}

void QuadraticPotential::gradient(const Eigen::VectorXd& theta,
                                  Eigen::Ref<Eigen::VectorXd> out) const {
  out = theta;
}

LogisticPotential::LogisticPotential(Eigen::MatrixXd X, Eigen::VectorXd y)
    : X_(std::move(X)), y_(std::move(y)), constants_{1.0, 1.0} {
  if (y_.size() != X_.rows()) throw DomainError("X and y disagree in length");
  for (Eigen::Index i = 0; i < y_.size(); ++i) {
    if (y_[i] != 0.0 && y_[i] != 1.0) {
      throw DomainError("logistic labels must be 0 or 1 (row " +
                        std::to_string(i + 1) + ")");
    }
  }
  if (X_.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X_.transpose() * X_,
                                                       Eigen::EigenvaluesOnly);
    constants_.lipschitz = 1.0 + 0.25 * eig.eigenvalues().maxCoeff();
  }
}

double LogisticPotential::value(const Eigen::VectorXd& theta) const {
  const Eigen::VectorXd eta = X_ * theta;
  double u = 0.5 * theta.squaredNorm();
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    u += log1p_exp(eta[i]) - y_[i] * eta[i];
  }
  return u;
}

void LogisticPotential::gradient(const Eigen::VectorXd& theta,
                                 Eigen::Ref<Eigen::VectorXd> out) const {
  Eigen::VectorXd residual = X_ * theta;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    residual[i] = logistic(residual[i]) - y_[i];
  }
  out.noalias() = X_.transpose() * residual;
  out += theta;
}

void LogisticPotential::prior_gradient(const Eigen::VectorXd& theta,
                                       Eigen::Ref<Eigen::VectorXd> out) const {
  out = theta;
}

void LogisticPotential::add_datum_gradient(const Eigen::VectorXd& theta,
                                           Eigen::Index i, double scale,
                                           Eigen::Ref<Eigen::VectorXd> out) const {
  const double r = logistic(X_.row(i).dot(theta)) - y_[i];
  out += (scale * r) * X_.row(i).transpose();
}

LinearRegressionPotential::LinearRegressionPotential(Eigen::MatrixXd X,
                                                     Eigen::VectorXd y,
                                                     double noise_variance)
    : X_(std::move(X)), y_(std::move(y)), noise_variance_(noise_variance) {
  if (!(noise_variance_ > 0.0)) throw DomainError("noise variance must be positive");
  if (y_.size() != X_.rows()) throw DomainError("X and y disagree in length");
  const Eigen::MatrixXd precision =
      X_.transpose() * X_ / noise_variance_ +
      Eigen::MatrixXd::Identity(X_.cols(), X_.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(precision,
                                                     Eigen::EigenvaluesOnly);
  constants_ = {eig.eigenvalues().maxCoeff(), eig.eigenvalues().minCoeff()};
}

double LinearRegressionPotential::value(const Eigen::VectorXd& theta) const {
  return 0.5 * (y_ - X_ * theta).squaredNorm() / noise_variance_ +
         0.5 * theta.squaredNorm();
}

void LinearRegressionPotential::gradient(const Eigen::VectorXd& theta,
                                         Eigen::Ref<Eigen::VectorXd> out) const {
  const Eigen::VectorXd residual = (X_ * theta - y_) / noise_variance_;
  out.noalias() = X_.transpose() * residual;
  out += theta;
}

void LinearRegressionPotential::prior_gradient(
    const Eigen::VectorXd& theta, Eigen::Ref<Eigen::VectorXd> out) const {
  out = theta;
}

void LinearRegressionPotential::add_datum_gradient(
    const Eigen::VectorXd& theta, Eigen::Index i, double scale,
    Eigen::Ref<Eigen::VectorXd> out) const {
  const double r = (X_.row(i).dot(theta) - y_[i]) / noise_variance_;
  out += (scale * r) * X_.row(i).transpose();
}

CrossedEffectsPotential::CrossedEffectsPotential(Eigen::MatrixXd Y)
    : Y_(std::move(Y)) {
  if (Y_.rows() < 1 || Y_.cols() < 1) {
    throw DomainError("crossed effects table must be at least 1 x 1");
  }
}

double CrossedEffectsPotential::value(const Eigen::VectorXd& theta) const {
  const Eigen::Index rows = Y_.rows();
  const Eigen::Index cols = Y_.cols();
  const double mu = theta[0];
  const auto a = theta.segment(1, rows);
  const auto b = theta.segment(1 + rows, cols);
  const double la = theta[1 + rows + cols];
  const double lb = theta[2 + rows + cols];
  double u = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double r = Y_(i, j) - mu - a[i] - b[j];
      u += 0.5 * r * r;
    }
  }
  u += 0.5 * mu * mu;
  u += 0.5 * a.squaredNorm() * std::exp(-la) + 0.5 * static_cast<double>(rows) * la +
       0.5 * la * la;
  u += 0.5 * b.squaredNorm() * std::exp(-lb) + 0.5 * static_cast<double>(cols) * lb +
       0.5 * lb * lb;
  return u;
}

void CrossedEffectsPotential::gradient(const Eigen::VectorXd& theta,
                                       Eigen::Ref<Eigen::VectorXd> out) const {
  const Eigen::Index rows = Y_.rows();
  const Eigen::Index cols = Y_.cols();
  const double mu = theta[0];
  const auto a = theta.segment(1, rows);
  const auto b = theta.segment(1 + rows, cols);
  const double la = theta[1 + rows + cols];
  const double lb = theta[2 + rows + cols];
  const double inv_va = std::exp(-la);
  const double inv_vb = std::exp(-lb);

  out.setZero();
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double r = Y_(i, j) - mu - a[i] - b[j];
      total += r;
      out[1 + i] -= r;
      out[1 + rows + j] -= r;
    }
  }
  out[0] = mu - total;
  out.segment(1, rows) += inv_va * a;
  out.segment(1 + rows, cols) += inv_vb * b;
  out[1 + rows + cols] =
      -0.5 * a.squaredNorm() * inv_va + 0.5 * static_cast<double>(rows) + la;
  out[2 + rows + cols] =
      -0.5 * b.squaredNorm() * inv_vb + 0.5 * static_cast<double>(cols) + lb;
}

double DoubleWellPotential::value(const Eigen::VectorXd& theta) const {
  const double x = theta[0];
  return 0.25 * x * x - 0.5 * std::log1p(x * x);
}

void DoubleWellPotential::gradient(const Eigen::VectorXd& theta,
                                   Eigen::Ref<Eigen::VectorXd> out) const {
  const double x = theta[0];
  out[0] = 0.5 * x - x / (1.0 + x * x);
}

std::unique_ptr<LogisticPotential> logistic_potential(const SyntheticDataset& data) {
  if (data.kind == DataKind::kCrossed) {
    throw ConfigError("logistic potential needs regression data");
  }
  return std::make_unique<LogisticPotential>(data.X, data.y);
}

std::unique_ptr<LinearRegressionPotential> linear_regression_potential(
    const SyntheticDataset& data, double noise_variance) {
  if (data.kind == DataKind::kCrossed) {
    throw ConfigError("linear potential needs regression data");
  }
  return std::make_unique<LinearRegressionPotential>(data.X, data.y,
                                                     noise_variance);
}

std::unique_ptr<CrossedEffectsPotential> crossed_effects_potential(
    const Eigen::MatrixXd& Y) {
  return std::make_unique<CrossedEffectsPotential>(Y);
}

std::unique_ptr<DoubleWellPotential> double_well_potential() {
  return std::make_unique<DoubleWellPotential>();
}

bool GroundTruth::has(TestFamily family) const {
  return values(family).size() > 0;
}

const Eigen::VectorXd& GroundTruth::values(TestFamily family) const {
  switch (family) {
    case TestFamily::kCoordinate:
      return coordinate;
    case TestFamily::kSquare:
      return square;
    case TestFamily::kIndicator:
      return indicator;
  }
  return coordinate;
}

Eigen::VectorXd GroundTruth::standard_errors(TestFamily family) const {
  const Eigen::VectorXd* se = nullptr;
  switch (family) {
    case TestFamily::kCoordinate:
      se = &coordinate_stderr;
      break;
    case TestFamily::kSquare:
      se = &square_stderr;
      break;
    case TestFamily::kIndicator:
      se = &indicator_stderr;
      break;
  }
  if (se->size() == values(family).size()) return *se;
  return Eigen::VectorXd::Zero(values(family).size());
}

std::string_view provenance_name(GroundTruth::Provenance p) {
  switch (p) {
    case GroundTruth::Provenance::kClosedForm:
      return "closed-form";
    case GroundTruth::Provenance::kQuadrature:
      return "quadrature";
    case GroundTruth::Provenance::kReferenceRun:
      return "long-reference-run";
  }
  return "?";
}

GaussianPosterior linear_posterior(const Eigen::MatrixXd& X,
                                   const Eigen::VectorXd& y,
                                   double noise_variance) {
  const Eigen::Index d = X.cols();
  const Eigen::MatrixXd precision =
      X.transpose() * X / noise_variance + Eigen::MatrixXd::Identity(d, d);
  const Eigen::LLT<Eigen::MatrixXd> llt(precision);
  GaussianPosterior post;
  post.covariance = llt.solve(Eigen::MatrixXd::Identity(d, d));
  post.mean = llt.solve(X.transpose() * y / noise_variance);
  return post;
}

GroundTruth closed_form_posterior(const SyntheticDataset& data,
                                  double noise_variance) {
  if (!(noise_variance > 0.0)) throw DomainError("noise variance must be positive");
  const GaussianPosterior post = linear_posterior(data.X, data.y, noise_variance);
  GroundTruth truth{GroundTruth::Provenance::kClosedForm, {}, {}, {}, {}, {}, {}, 0.0};
  truth.coordinate = post.mean;
  truth.square = post.mean.array().square() + post.covariance.diagonal().array();
  truth.indicator.resize(post.mean.size());
  for (Eigen::Index j = 0; j < post.mean.size(); ++j) {
    truth.indicator[j] =
        normal_cdf(post.mean[j] / std::sqrt(post.covariance(j, j)));
  }
  return truth;
}

double double_well_truncation_radius() {
  // For |x| >= 1, x^2 e^{-U} <= 2 |x|^3 e^{-x^2/4}, whose tail integral is
  // 16 (T + 1) e^{-T} with T = R^2 / 4 (both sides counted).
  double radius = 1.0;
  while (true) {
    const double t = 0.25 * radius * radius;
    if (16.0 * (t + 1.0) * std::exp(-t) < 1e-12) return radius;
    radius += 0.5;
  }
}

GroundTruth double_well_truth() {
  auto density = [&](double x) {
    return std::exp(-(0.25 * x * x - 0.5 * std::log1p(x * x)));
  };
  const double radius = double_well_truncation_radius();
  const QuadratureResult mass =
      integrate_gauss_kronrod(density, -radius, radius, 1e-14);
  const QuadratureResult second = integrate_gauss_kronrod(
      [&](double x) { return x * x * density(x); }, -radius, radius, 1e-14);
  GroundTruth truth{GroundTruth::Provenance::kQuadrature, {}, {}, {}, {}, {}, {}, 0.0};
  truth.coordinate = Eigen::VectorXd::Zero(1);
  truth.indicator = Eigen::VectorXd::Constant(1, 0.5);
  const double moment = second.value / mass.value;
  truth.square = Eigen::VectorXd::Constant(1, moment);
  truth.quadrature_error =
      (second.error + std::abs(moment) * mass.error) / mass.value + 1e-12;
  return truth;
}

}  // namespace lqmc
