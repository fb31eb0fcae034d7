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

#include "lqmc/experiment.hpp"

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "lqmc/error.hpp"

namespace lqmc {
namespace {

ExperimentSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_experiment(in);
}

TEST(ExperimentSpecTest, DefaultsValidate) {
  EXPECT_NO_THROW(ExperimentSpec{}.validate());
}

TEST(ExperimentSpecTest, RoundTripDefaultsAndCustomValues) {
  ExperimentSpec spec;
  EXPECT_EQ(parse(serialize_experiment(spec)), spec);
  spec.name = "custom";
  spec.model = "crossed";
  spec.n_obs = 3;
  spec.dim = 5;
  spec.orders = {10, 12, 14};
  spec.offset = 5;
  spec.burnin_order = 8;
  spec.schedule = "decreasing";
  spec.h_first = 0.1 / 3.0;
  spec.tests = {TestFamily::kIndicator, TestFamily::kCoordinate};
  spec.initial = std::vector<double>(11, 0.1);
  spec.max_iterations = 77;
  spec.truth_discard = 1000;
  spec.report = "out/report.csv";
  const ExperimentSpec back = parse(serialize_experiment(spec));
  EXPECT_EQ(back, spec);
  EXPECT_EQ(serialize_experiment(back), serialize_experiment(spec));
}

TEST(ExperimentSpecTest, ParsesSectionsAndComments) {
  const auto spec = parse(
      "# comment\n[model]\nkind = logistic  # trailing\ndim = 4\n\n[drive]\n"
      "orders = 8 9\n[run]\ntests = x x2 ind\n");
  EXPECT_EQ(spec.model, "logistic");
  EXPECT_EQ(spec.dim, 4);
  EXPECT_EQ(spec.orders, (std::vector<int>{8, 9}));
  EXPECT_EQ(spec.tests.size(), 3u);
}

TEST(ExperimentSpecTest, ParseErrorsNameTheLine) {
  const auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("[model]\nkind = linear\nbogus = 1\n"), 3u);
  EXPECT_EQ(line_of("[model]\ndim = 3\ndim = 4\n"), 3u);
  EXPECT_EQ(line_of("[model]\ndim = three\n"), 2u);
  EXPECT_EQ(line_of("[model\n"), 1u);
  EXPECT_EQ(line_of("kind = linear\n"), 1u);
  EXPECT_EQ(line_of("[run]\ntests = x cube\n"), 2u);
}

TEST(ExperimentSpecTest, ValidationNamesTheKey) {
  const auto message = [](ExperimentSpec spec) -> std::string {
    try {
      spec.validate();
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  ExperimentSpec spec;
  spec.model = "probit";
  EXPECT_NE(message(spec).find("model.kind"), std::string::npos);
  spec = {};
  spec.orders = {2};
  EXPECT_NE(message(spec).find("drive.orders"), std::string::npos);
  spec = {};
  spec.orders = {29};
  EXPECT_NE(message(spec).find("drive.orders"), std::string::npos);
  spec = {};
  spec.offset = 3;
  spec.orders = {10};
  EXPECT_NE(message(spec).find("drive.offset"), std::string::npos);
  spec = {};
  spec.schedule = "polynomial";
  EXPECT_NE(message(spec).find("schedule"), std::string::npos);
  spec = {};
  spec.replicates = 1;
  EXPECT_NE(message(spec).find("run.replicates"), std::string::npos);
  spec = {};
  spec.minibatch = 5;
  spec.model = "quadratic";
  EXPECT_NE(message(spec).find("run.minibatch"), std::string::npos);
  spec = {};
  spec.initial = {1.0};
  EXPECT_NE(message(spec).find("run.initial"), std::string::npos);
}

TEST(ExperimentSpecTest, DerivedQuantities) {
  ExperimentSpec spec;
  EXPECT_EQ(spec.iterations(10), 1023);
  spec.max_iterations = 1;
  EXPECT_EQ(spec.iterations(10), 1);
  spec.model = "crossed";
  spec.n_obs = 3;
  spec.dim = 5;
  EXPECT_EQ(spec.dimension(), 11);
  spec.schedule = "decreasing";
  const auto s = spec.schedule_for(1023);
  EXPECT_NEAR(s(1), spec.h_first, 1e-15);
  EXPECT_NEAR(s(1023), spec.h_last, 1e-15);
}

TEST(ExperimentSpecTest, BundledSpecsParseValidateAndRoundTrip) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(LQMC_SPECS_DIR)) {
    if (entry.path().extension() != ".spec") continue;
    ++count;
    const auto spec = load_experiment(entry.path());
    EXPECT_NO_THROW(spec.validate()) << entry.path();
    EXPECT_EQ(parse(serialize_experiment(spec)), spec) << entry.path();
  }
  EXPECT_GE(count, 14);
}

TEST(ExperimentSpecTest, MissingFile) {
  EXPECT_THROW(load_experiment("/nonexistent/x.spec"), ConfigError);
}

}  // namespace
}  // namespace lqmc
