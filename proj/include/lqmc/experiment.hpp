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
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "lqmc/schedule.hpp"
#include "lqmc/test_function.hpp"

namespace lqmc {

// Everything needed to reproduce one comparison run. The text form is an
// INI-style file; see docs/spec-format.md for the grammar.
struct ExperimentSpec {
  std::string name = "experiment";

  // [model]
  std::string model = "linear";  // quadratic|logistic|linear|crossed|double_well
  int n_obs = 20;                // N, or I for crossed
  int dim = 10;                  // d, or J for crossed
  double noise_variance = 0.25;  // linear model only
  std::uint64_t data_seed = 1;
  std::string data_file;         // load instead of synthesizing when set

  // [drive]
  std::vector<int> orders{10};   // m values; n = 2^m - 1
  std::uint64_t offset = 0;      // 0 = table offset
  int burnin_order = 0;          // 0 = no burn-in segment

  // [schedule]
  std::string schedule = "constant";  // constant|polynomial|decreasing
  double h = 1e-3;
  double c0 = 0.0;
  double c1 = 0.0;
  double exponent = -1.0 / 3.0;
  double h_first = 1e-2;
  double h_last = 1e-4;

  // [run]
  int replicates = 20;
  std::uint64_t seed = 1;
  std::vector<TestFamily> tests{TestFamily::kCoordinate, TestFamily::kSquare,
                                TestFamily::kIndicator};
  int minibatch = 0;
  std::int64_t max_iterations = 0;  // 0 = full period
  std::vector<double> initial;      // empty = origin

  // [truth] long reference run, for models without closed forms
  double truth_h = 1e-4;
  int truth_log2n = 22;
  int truth_seeds = 10;
  std::uint64_t truth_seed = 7;
  std::int64_t truth_discard = -1;  // -1 = one eighth of the run

  // [output]
  std::string report;
  std::string replicates_file;

  bool operator==(const ExperimentSpec&) const = default;

  // Model dimension implied by the [model] section.
  int dimension() const;
  // Iterations of the main segment for order m.
  std::int64_t iterations(int order) const;
  // Schedule for a main segment of n iterations.
  StepSchedule schedule_for(std::int64_t n) const;

  // Throws ConfigError naming the offending key.
  void validate() const;
};

ExperimentSpec parse_experiment(std::istream& in);
ExperimentSpec load_experiment(const std::filesystem::path& path);
std::string serialize_experiment(const ExperimentSpec& spec);

}  // namespace lqmc
