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

#include "lqmc/drive.hpp"

#include <cmath>
#include <numeric>

#include "lqmc/csv.hpp"
#include "lqmc/error.hpp"
#include "lqmc/normal.hpp"

namespace lqmc {

int coprime_width(std::uint64_t n, int d) {
  if (d < 1) throw DomainError("drive dimension must be at least 1");
  int w = d;
  while (std::gcd(n, static_cast<std::uint64_t>(w)) != 1) ++w;
  return w;
}

DriveMatrix::DriveMatrix(std::shared_ptr<const CudSequence> sequence,
                         int dimension, std::vector<std::uint64_t> shift)
    : sequence_(std::move(sequence)),
      dimension_(dimension),
      width_(coprime_width(sequence_->size(), dimension)),
      shift_(std::move(shift)) {
  if (shift_.size() != static_cast<std::size_t>(width_)) {
    throw DomainError("shift length must equal the stored width " +
                      std::to_string(width_));
  }
}

Eigen::VectorXd DriveMatrix::row(Eigen::Index k) const {
  Eigen::VectorXd out(dimension_);
  row(k, out);
  return out;
}

void DriveMatrix::row(Eigen::Index k, Eigen::Ref<Eigen::VectorXd> out) const {
  for (int j = 0; j < dimension_; ++j) out[j] = (*this)(k, j);
}

Eigen::MatrixXd DriveMatrix::dense() const {
  Eigen::MatrixXd out(rows(), dimension_);
  for (Eigen::Index k = 0; k < rows(); ++k) {
    for (int j = 0; j < dimension_; ++j) out(k, j) = (*this)(k, j);
  }
  return out;
}

std::vector<double> DriveMatrix::shift() const {
  std::vector<double> out(shift_.size());
  for (std::size_t j = 0; j < shift_.size(); ++j) {
    out[j] = std::ldexp(static_cast<double>(shift_[j] >> 11), -53);
  }
  return out;
}

DriveMatrix DriveMatrix::rotated(std::span<const std::uint64_t> extra) const {
  if (extra.size() != shift_.size()) {
    throw DomainError("rotation length must equal the stored width");
  }
  std::vector<std::uint64_t> combined(shift_.size());
  for (std::size_t j = 0; j < shift_.size(); ++j) {
    combined[j] = shift_[j] + extra[j];
  }
  return DriveMatrix(sequence_, dimension_, std::move(combined));
}

std::uint64_t to_fixed_shift(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("shift components must lie in [0, 1)");
  }
  return static_cast<std::uint64_t>(std::ldexp(delta, 64));
}

std::vector<std::uint64_t> negate_shift(std::span<const std::uint64_t> shift) {
  std::vector<std::uint64_t> out(shift.size());
  for (std::size_t j = 0; j < shift.size(); ++j) out[j] = 0 - shift[j];
  return out;
}

DriveMatrix build_drive_matrix(std::shared_ptr<const CudSequence> sequence,
                               int dimension, std::span<const double> shift) {
  const int width = coprime_width(sequence->size(), dimension);
  if (shift.size() != static_cast<std::size_t>(dimension) &&
      shift.size() != static_cast<std::size_t>(width)) {
    throw DomainError("shift must have d or d' components");
  }
  std::vector<std::uint64_t> fixed(static_cast<std::size_t>(width), 0);
  for (std::size_t j = 0; j < shift.size(); ++j) fixed[j] = to_fixed_shift(shift[j]);
  return DriveMatrix(std::move(sequence), dimension, std::move(fixed));
}

DriveMatrix build_drive_matrix(std::shared_ptr<const CudSequence> sequence,
                               int dimension, BaselinePrng& rng) {
  const int width = coprime_width(sequence->size(), dimension);
  std::vector<std::uint64_t> fixed(static_cast<std::size_t>(width));
  for (auto& f : fixed) f = rng.next_u64();
  return DriveMatrix(std::move(sequence), dimension, std::move(fixed));
}

DriveMatrix unshifted_drive_matrix(std::shared_ptr<const CudSequence> sequence,
                                   int dimension) {
  const int width = coprime_width(sequence->size(), dimension);
  return DriveMatrix(std::move(sequence), dimension,
                     std::vector<std::uint64_t>(static_cast<std::size_t>(width), 0));
}

GaussianDrive::GaussianDrive(RowMajorMatrixXd values)
    : values_(std::move(values)) {
  if (!values_.allFinite()) throw NumericError("non-finite Gaussian drive entry");
}

void gaussian_row(const DriveMatrix& matrix, Eigen::Index k,
                  Eigen::Ref<Eigen::VectorXd> out) {
  for (int j = 0; j < matrix.dimension(); ++j) {
    out[j] = inverse_normal_cdf(clamp_open_unit(matrix(k, j)));
  }
}

GaussianDrive gaussian_rows(const DriveMatrix& matrix) {
  RowMajorMatrixXd xi(matrix.rows(), matrix.dimension());
  Eigen::VectorXd buffer(matrix.dimension());
  for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
    gaussian_row(matrix, k, buffer);
    xi.row(k) = buffer.transpose();
  }
  return GaussianDrive(std::move(xi));
}

void write_drive_csv(std::ostream& out, const DriveMatrix& matrix) {
  for (int j = 0; j < matrix.dimension(); ++j) {
    out << (j ? "," : "") << 'u' << (j + 1);
  }
  out << '\n';
  for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
    for (int j = 0; j < matrix.dimension(); ++j) {
      out << (j ? "," : "") << format_double(matrix(k, j));
    }
    out << '\n';
  }
}

}  // namespace lqmc
