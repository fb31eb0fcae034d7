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
#include <span>
#include <vector>

#include <Eigen/Core>

#include "lqmc/lfsr.hpp"
#include "lqmc/prng.hpp"

namespace lqmc {

using RowMajorMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Smallest width >= d that is coprime with n.
int coprime_width(std::uint64_t n, int d);

// The n x d' variate matrix of one CUD period repeated d' times, laid out
// row-major (row k holds v_{k d'}, ..., v_{k d' + d' - 1}, indices mod n,
// rows 0-based), rotated by a Cranley-Patterson shift. Only the first d
// columns are exposed through row()/operator().
//
// Entries and shifts are kept as 64-bit binary fractions, so rotation is
// exact addition mod 2^64 and composing a shift with its negation restores
// the unshifted matrix bit for bit.
class DriveMatrix {
 public:
  DriveMatrix(std::shared_ptr<const CudSequence> sequence, int dimension,
              std::vector<std::uint64_t> shift);

  std::shared_ptr<const CudSequence> sequence() const { return sequence_; }
  Eigen::Index rows() const {
    return static_cast<Eigen::Index>(sequence_->size());
  }
  int dimension() const { return dimension_; }
  int stored_width() const { return width_; }

  // Fixed-point entry (value * 2^64) of stored column j < stored_width().
  std::uint64_t fixed_entry(Eigen::Index row, int column) const {
    const std::uint64_t index =
        (static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(width_) +
         static_cast<std::uint64_t>(column)) %
        sequence_->size();
    const std::uint64_t v = static_cast<std::uint64_t>(sequence_->numerator(index))
                            << (64 - sequence_->order());
    return v + shift_[static_cast<std::size_t>(column)];
  }

  // Entry in [0, 1), truncated to 53 bits.
  double operator()(Eigen::Index row, int column) const {
    return static_cast<double>(fixed_entry(row, column) >> 11) * 0x1p-53;
  }

  Eigen::VectorXd row(Eigen::Index k) const;
  void row(Eigen::Index k, Eigen::Ref<Eigen::VectorXd> out) const;

  // All rows, exposed columns only.
  Eigen::MatrixXd dense() const;

  std::span<const std::uint64_t> fixed_shift() const { return shift_; }
  std::vector<double> shift() const;

  // Same skeleton with shift (this->shift + extra) mod 1.
  DriveMatrix rotated(std::span<const std::uint64_t> extra) const;

 private:
  std::shared_ptr<const CudSequence> sequence_;
  int dimension_;
  int width_;
  std::vector<std::uint64_t> shift_;
};

// Binary fraction of a shift component in [0, 1). Throws DomainError outside.
std::uint64_t to_fixed_shift(double delta);
// Shift that undoes `shift`.
std::vector<std::uint64_t> negate_shift(std::span<const std::uint64_t> shift);

// Explicit shift of length d or d' (missing trailing components are zero).
DriveMatrix build_drive_matrix(std::shared_ptr<const CudSequence> sequence,
                               int dimension, std::span<const double> shift);
// Shift drawn uniformly from [0,1)^{d'}: one 64-bit draw per column.
DriveMatrix build_drive_matrix(std::shared_ptr<const CudSequence> sequence,
                               int dimension, BaselinePrng& rng);
DriveMatrix unshifted_drive_matrix(std::shared_ptr<const CudSequence> sequence,
                                   int dimension);

// Materialized Gaussian perturbations, one row per iteration.
class GaussianDrive {
 public:
  explicit GaussianDrive(RowMajorMatrixXd values);

  Eigen::Index rows() const { return values_.rows(); }
  int dimension() const { return static_cast<int>(values_.cols()); }
  auto row(Eigen::Index k) const { return values_.row(k).transpose(); }
  const RowMajorMatrixXd& values() const { return values_; }

 private:
  RowMajorMatrixXd values_;
};

// xi_k = inverse_normal_cdf(clamp_open_unit(u_k)), componentwise.
void gaussian_row(const DriveMatrix& matrix, Eigen::Index k,
                  Eigen::Ref<Eigen::VectorXd> out);
GaussianDrive gaussian_rows(const DriveMatrix& matrix);

// One line per row, exposed columns, 17 significant digits, header u1..ud.
void write_drive_csv(std::ostream& out, const DriveMatrix& matrix);

}  // namespace lqmc
