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

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "lqmc/discrepancy.hpp"
#include "lqmc/error.hpp"
#include "lqmc/normal.hpp"

namespace lqmc {
namespace {

std::shared_ptr<const CudSequence> sequence(int m) {
  return std::make_shared<const CudSequence>(generate_cud(default_config(m)));
}

// x^3 + x + 1 with offset 1: values 1/2, 1/8, 1/4, 5/8, 3/8, 7/8, 3/4.
std::shared_ptr<const CudSequence> hand_sequence() {
  return std::make_shared<const CudSequence>(generate_cud(LfsrConfig(Gf2Poly(3, 0x3), 1, 1)));
}

std::vector<double> column(const DriveMatrix& matrix, int j) {
  std::vector<double> out(static_cast<std::size_t>(matrix.rows()));
  for (Eigen::Index k = 0; k < matrix.rows(); ++k) out[k] = matrix(k, j);
  return out;
}

TEST(CoprimeWidthTest, Examples) {
  EXPECT_EQ(coprime_width(7, 2), 2);
  EXPECT_EQ(coprime_width(15, 3), 4);
  EXPECT_EQ(coprime_width(4095, 100), 101);
  EXPECT_EQ(coprime_width(8191, 10), 10);
  EXPECT_EQ(coprime_width(16383, 100), 100);
}

TEST(DriveMatrixTest, RowMajorLayoutWithWrap) {
  const auto seq = hand_sequence();
  const auto matrix = unshifted_drive_matrix(seq, 2);
  ASSERT_EQ(matrix.rows(), 7);
  ASSERT_EQ(matrix.stored_width(), 2);
  const auto v = [&](std::size_t i) { return (*seq)[i % 7]; };
  EXPECT_EQ(matrix(0, 0), v(0));
  EXPECT_EQ(matrix(0, 1), v(1));
  EXPECT_EQ(matrix(1, 0), v(2));
  EXPECT_EQ(matrix(1, 1), v(3));
  EXPECT_EQ(matrix(3, 1), v(7));
  EXPECT_EQ(matrix(6, 1), v(13));
}

TEST(DriveMatrixTest, WidensToCoprimeWidth) {
  const auto seq = sequence(4);
  const auto matrix = unshifted_drive_matrix(seq, 3);
  EXPECT_EQ(matrix.dimension(), 3);
  EXPECT_EQ(matrix.stored_width(), 4);
  EXPECT_EQ(matrix.row(0).size(), 3);
  for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(matrix(k, j), (*seq)[static_cast<std::size_t>(4 * k + j) % 15]);
    }
  }
  EXPECT_EQ(matrix.dense().cols(), 3);
}

TEST(DriveMatrixTest, UnshiftedColumnsAreStratified) {
  for (auto [m, d] : {std::pair{13, 10}, std::pair{10, 2}, std::pair{12, 100}}) {
    const auto matrix = unshifted_drive_matrix(sequence(m), d);
    for (int j = 0; j < d; ++j) {
      std::set<std::uint64_t> cells;
      for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
        cells.insert(matrix.fixed_entry(k, j) >> (64 - m));
      }
      ASSERT_EQ(cells.size(), static_cast<std::size_t>(matrix.rows()))
          << "m=" << m << " column " << j;
      ASSERT_FALSE(cells.contains(0));
    }
  }
}

TEST(DriveMatrixTest, ShiftedColumnsHaveAtMostOneDoubleCell) {
  const auto seq = sequence(10);
  BaselinePrng rng(4, 4);
  for (int rep = 0; rep < 5; ++rep) {
    const auto matrix = build_drive_matrix(seq, 3, rng);
    for (int j = 0; j < 3; ++j) {
      std::vector<int> counts(1024, 0);
      for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
        ++counts[matrix.fixed_entry(k, j) >> 54];
      }
      EXPECT_LE(*std::max_element(counts.begin(), counts.end()), 2);
      EXPECT_LE(std::count(counts.begin(), counts.end(), 2), 1);
    }
  }
}

TEST(DriveMatrixTest, EntriesStayInUnitInterval) {
  const auto seq = sequence(8);
  const std::vector<double> shift{0.999999, 0.5};
  const auto matrix = build_drive_matrix(seq, 2, shift);
  for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_GE(matrix(k, j), 0.0);
      EXPECT_LT(matrix(k, j), 1.0);
    }
  }
}

TEST(DriveMatrixTest, RotationInverseRestoresMatrixExactly) {
  const auto seq = sequence(9);
  BaselinePrng rng(1, 2);
  const auto base = unshifted_drive_matrix(seq, 4);
  const auto shifted = build_drive_matrix(seq, 4, rng);
  const auto restored = shifted.rotated(negate_shift(shifted.fixed_shift()));
  for (Eigen::Index k = 0; k < base.rows(); ++k) {
    for (int j = 0; j < base.stored_width(); ++j) {
      ASSERT_EQ(restored.fixed_entry(k, j), base.fixed_entry(k, j));
    }
  }
}

TEST(DriveMatrixTest, ShiftCoversStoredWidth) {
  const auto seq = sequence(4);
  BaselinePrng rng(1, 1);
  const auto matrix = build_drive_matrix(seq, 3, rng);
  EXPECT_EQ(matrix.fixed_shift().size(), 4u);
  const std::vector<double> short_shift{0.1, 0.2, 0.3};
  const std::vector<double> full_shift{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> bad_shift{0.1, 0.2};
  EXPECT_NO_THROW(build_drive_matrix(seq, 3, short_shift));
  EXPECT_EQ(build_drive_matrix(seq, 3, full_shift).shift()[3], 0.4);
  EXPECT_THROW(build_drive_matrix(seq, 3, bad_shift), DomainError);
}

TEST(DriveMatrixTest, KolmogorovDistanceWithinTwoOverN) {
  const auto seq = sequence(11);
  const double n = static_cast<double>(seq->size());
  for (std::uint64_t r = 0; r < 20; ++r) {
    BaselinePrng rng(77, r);
    const auto matrix = build_drive_matrix(seq, 5, rng);
    for (int j = 0; j < 5; ++j) {
      const auto col = column(matrix, j);
      ASSERT_LE(star_discrepancy_1d(make_point_set_1d(col)), 2.0 / n);
    }
  }
}

TEST(ToFixedShiftTest, Range) {
  EXPECT_EQ(to_fixed_shift(0.0), 0u);
  EXPECT_EQ(to_fixed_shift(0.5), std::uint64_t{1} << 63);
  EXPECT_THROW(to_fixed_shift(1.0), DomainError);
  EXPECT_THROW(to_fixed_shift(-0.25), DomainError);
}

TEST(GaussianRowTest, TransformsEachEntry) {
  const auto seq = sequence(6);
  const std::vector<double> shift{0.25, 0.75};
  const auto matrix = build_drive_matrix(seq, 2, shift);
  Eigen::VectorXd xi(2);
  for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
    gaussian_row(matrix, k, xi);
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(xi[j], inverse_normal_cdf(clamp_open_unit(matrix(k, j))));
    }
  }
}

TEST(GaussianRowTest, HalfMapsToZeroAndReflectionNegates) {
  // For m = 3 the unshifted rows of width 2 start (1/2, 1/8), (1/4, 5/8).
  const auto seq = hand_sequence();
  const auto matrix = unshifted_drive_matrix(seq, 2);
  Eigen::VectorXd xi(2);
  gaussian_row(matrix, 0, xi);
  EXPECT_EQ(xi[0], 0.0);
  // Shifting by 3/8 maps (1/2, 1/8) to (7/8, 1/2).
  const std::vector<double> shift{0.375, 0.375};
  Eigen::VectorXd mirrored(2);
  gaussian_row(build_drive_matrix(seq, 2, shift), 0, mirrored);
  EXPECT_EQ(mirrored[1], 0.0);
  Eigen::VectorXd eighth(2);
  gaussian_row(matrix, 0, eighth);
  EXPECT_EQ(mirrored[0], -eighth[1]);
}

TEST(GaussianRowsTest, MeanWithinCltScale) {
  const auto seq = sequence(10);
  BaselinePrng rng(2, 9);
  const auto drive = gaussian_rows(build_drive_matrix(seq, 2, rng));
  const Eigen::VectorXd mean = drive.values().colwise().mean().transpose();
  const double bound = 4.0 / std::sqrt(static_cast<double>(drive.rows()));
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), bound);
}

TEST(GaussianRowsTest, Deterministic) {
  const auto seq = sequence(8);
  BaselinePrng a(6, 1), b(6, 1);
  const auto x = gaussian_rows(build_drive_matrix(seq, 3, a));
  const auto y = gaussian_rows(build_drive_matrix(seq, 3, b));
  EXPECT_EQ(x.values(), y.values());
}

TEST(WriteDriveCsvTest, HeaderAndRows) {
  const auto matrix = unshifted_drive_matrix(hand_sequence(), 2);
  std::ostringstream out;
  write_drive_csv(out, matrix);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "u1,u2");
  std::getline(in, line);
  EXPECT_EQ(line, "0.5,0.125");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 7);
}

}  // namespace
}  // namespace lqmc
