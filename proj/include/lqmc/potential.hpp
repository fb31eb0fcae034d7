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

#include <optional>
#include <string>

#include <Eigen/Core>

namespace lqmc {

// Smoothness L and strong convexity M of a potential: M I <= Hessian <= L I.
struct SmoothnessConstants {
  double lipschitz;
  double convexity;
};

// Negative log-density U of a target pi(theta) ~ exp(-U(theta)).
//
// Implementations are immutable after construction; value and gradient are
// reentrant. Potentials built from data additionally expose the split
// grad U = grad(prior term) + sum_i grad(likelihood term i) used by
// stochastic-gradient chains.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  virtual double value(const Eigen::VectorXd& theta) const = 0;
  virtual void gradient(const Eigen::VectorXd& theta,
                        Eigen::Ref<Eigen::VectorXd> out) const = 0;
  Eigen::VectorXd gradient(const Eigen::VectorXd& theta) const {
    Eigen::VectorXd g(dimension());
    gradient(theta, g);
    return g;
  }

  virtual std::optional<SmoothnessConstants> constants() const {
    return std::nullopt;
  }

  // Number of likelihood terms; 0 when minibatching is unsupported.
  virtual Eigen::Index data_size() const { return 0; }
  // out = grad(prior term). Throws ConfigError when unsupported.
  virtual void prior_gradient(const Eigen::VectorXd& theta,
                              Eigen::Ref<Eigen::VectorXd> out) const;
  // out += scale * grad(likelihood term i).
  virtual void add_datum_gradient(const Eigen::VectorXd& theta, Eigen::Index i,
                                  double scale,
                                  Eigen::Ref<Eigen::VectorXd> out) const;
};

}  // namespace lqmc
