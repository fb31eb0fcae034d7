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

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lqmc/csv.hpp"
#include "lqmc/error.hpp"
#include "lqmc/lfsr.hpp"
#include "lqmc/models.hpp"

namespace lqmc {
namespace {

const std::set<std::string> kModels = {"quadratic", "logistic", "linear",
                                       "crossed", "double_well"};
const std::set<std::string> kSchedules = {"constant", "polynomial",
                                          "decreasing"};

std::vector<std::string> words(std::string_view value) {
  std::vector<std::string> out;
  std::istringstream in{std::string(value)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

// One table drives both parsing and serialization so the two cannot drift.
struct Field {
  std::string section;
  std::string key;
  std::function<void(ExperimentSpec&, std::string_view, std::size_t)> parse;
  std::function<std::string(const ExperimentSpec&)> print;
};

template <typename T>
Field integer_field(std::string section, std::string key, T ExperimentSpec::*member) {
  return {std::move(section), std::move(key),
          [member](ExperimentSpec& s, std::string_view v, std::size_t line) {
            s.*member = static_cast<T>(parse_integer(v, line));
          },
          [member](const ExperimentSpec& s) { return std::to_string(s.*member); }};
}

Field real_field(std::string section, std::string key,
                 double ExperimentSpec::*member) {
  return {std::move(section), std::move(key),
          [member](ExperimentSpec& s, std::string_view v, std::size_t line) {
            s.*member = parse_double(v, line);
          },
          [member](const ExperimentSpec& s) { return format_double(s.*member); }};
}

Field text_field(std::string section, std::string key,
                 std::string ExperimentSpec::*member) {
  return {std::move(section), std::move(key),
          [member](ExperimentSpec& s, std::string_view v, std::size_t) {
            s.*member = std::string(v);
          },
          [member](const ExperimentSpec& s) { return s.*member; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      text_field("experiment", "name", &ExperimentSpec::name),
      text_field("model", "kind", &ExperimentSpec::model),
      integer_field("model", "n_obs", &ExperimentSpec::n_obs),
      integer_field("model", "dim", &ExperimentSpec::dim),
      real_field("model", "noise_variance", &ExperimentSpec::noise_variance),
      integer_field("model", "data_seed", &ExperimentSpec::data_seed),
      text_field("model", "data_file", &ExperimentSpec::data_file),
      {"drive", "orders",
       [](ExperimentSpec& s, std::string_view v, std::size_t line) {
         s.orders.clear();
         for (const auto& w : words(v)) {
           s.orders.push_back(static_cast<int>(parse_integer(w, line)));
         }
       },
       [](const ExperimentSpec& s) {
         std::vector<std::string> parts;
         for (int m : s.orders) parts.push_back(std::to_string(m));
         return join(parts);
       }},
      integer_field("drive", "offset", &ExperimentSpec::offset),
      integer_field("drive", "burnin_order", &ExperimentSpec::burnin_order),
      text_field("schedule", "kind", &ExperimentSpec::schedule),
      real_field("schedule", "h", &ExperimentSpec::h),
      real_field("schedule", "c0", &ExperimentSpec::c0),
      real_field("schedule", "c1", &ExperimentSpec::c1),
      real_field("schedule", "exponent", &ExperimentSpec::exponent),
      real_field("schedule", "h_first", &ExperimentSpec::h_first),
      real_field("schedule", "h_last", &ExperimentSpec::h_last),
      integer_field("run", "replicates", &ExperimentSpec::replicates),
      integer_field("run", "seed", &ExperimentSpec::seed),
      {"run", "tests",
       [](ExperimentSpec& s, std::string_view v, std::size_t line) {
         s.tests.clear();
         try {
           for (const auto& w : words(v)) s.tests.push_back(parse_family(w));
         } catch (const ConfigError& e) {
           throw ParseError(e.what(), line);
         }
       },
       [](const ExperimentSpec& s) {
         std::vector<std::string> parts;
         for (auto f : s.tests) parts.emplace_back(family_name(f));
         return join(parts);
       }},
      integer_field("run", "minibatch", &ExperimentSpec::minibatch),
      integer_field("run", "max_iterations", &ExperimentSpec::max_iterations),
      {"run", "initial",
       [](ExperimentSpec& s, std::string_view v, std::size_t line) {
         s.initial.clear();
         for (const auto& w : words(v)) s.initial.push_back(parse_double(w, line));
       },
       [](const ExperimentSpec& s) {
         std::vector<std::string> parts;
         for (double x : s.initial) parts.push_back(format_double(x));
         return join(parts);
       }},
      real_field("truth", "h", &ExperimentSpec::truth_h),
      integer_field("truth", "log2n", &ExperimentSpec::truth_log2n),
      integer_field("truth", "seeds", &ExperimentSpec::truth_seeds),
      integer_field("truth", "seed", &ExperimentSpec::truth_seed),
      integer_field("truth", "discard", &ExperimentSpec::truth_discard),
      text_field("output", "report", &ExperimentSpec::report),
      text_field("output", "replicates", &ExperimentSpec::replicates_file),
  };
  return table;
}

}  // namespace

int ExperimentSpec::dimension() const {
  if (model == "crossed") return n_obs + dim + 3;
  if (model == "double_well") return 1;
  return dim;
}

std::int64_t ExperimentSpec::iterations(int order) const {
  const std::int64_t n = (std::int64_t{1} << order) - 1;
  return max_iterations > 0 ? std::min(n, max_iterations) : n;
}

StepSchedule ExperimentSpec::schedule_for(std::int64_t n) const {
  if (schedule == "constant") return StepSchedule::constant(h);
  if (schedule == "polynomial") return StepSchedule::polynomial(c0, c1, exponent);
  return StepSchedule::from_endpoints(h_first, h_last, n, exponent);
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why);
  };
  if (!kModels.contains(model)) fail("model.kind", "unknown model '" + model + "'");
  if (n_obs < 1) fail("model.n_obs", "must be positive");
  if (dim < 1) fail("model.dim", "must be positive");
  if (model == "linear" && !(noise_variance > 0.0)) {
    fail("model.noise_variance", "must be positive");
  }
  if (orders.empty()) fail("drive.orders", "at least one order required");
  const int lo = builtin_table().front().order;
  for (int m : orders) {
    if (m < lo || m > CudSequence::kMaxMaterializedOrder) {
      fail("drive.orders", "order " + std::to_string(m) + " outside " +
                               std::to_string(lo) + ".." +
                               std::to_string(CudSequence::kMaxMaterializedOrder));
    }
    if (offset != 0) {
      try {
        default_config(m, offset);
      } catch (const ConfigError& e) {
        fail("drive.offset", e.what());
      }
    }
  }
  if (burnin_order != 0 &&
      (burnin_order < lo || burnin_order > CudSequence::kMaxMaterializedOrder)) {
    fail("drive.burnin_order", "outside the table range");
  }
  if (!kSchedules.contains(schedule)) {
    fail("schedule.kind", "unknown schedule '" + schedule + "'");
  }
  try {
    for (int m : orders) (void)schedule_for(iterations(m));
  } catch (const ConfigError& e) {
    fail("schedule", e.what());
  }
  if (replicates < 2) fail("run.replicates", "need at least 2 for standard errors");
  if (tests.empty()) fail("run.tests", "at least one test function required");
  if (minibatch < 0) fail("run.minibatch", "must be >= 0");
  if (minibatch > 0 && model != "logistic" && model != "linear") {
    fail("run.minibatch", "stochastic gradients need a regression model");
  }
  if (minibatch > n_obs) fail("run.minibatch", "larger than the dataset");
  if (max_iterations < 0) fail("run.max_iterations", "must be >= 0");
  if (!initial.empty() && static_cast<int>(initial.size()) != dimension()) {
    fail("run.initial", "needs " + std::to_string(dimension()) + " values");
  }
  if (!(truth_h > 0.0)) fail("truth.h", "must be positive");
  if (truth_log2n < 1 || truth_log2n > 40) fail("truth.log2n", "must be in 1..40");
  if (truth_seeds < 0) fail("truth.seeds", "must be >= 0");
}

ExperimentSpec parse_experiment(std::istream& in) {
  std::map<std::pair<std::string, std::string>, const Field*> lookup;
  for (const auto& f : fields()) lookup[{f.section, f.key}] = &f;

  ExperimentSpec spec;
  std::string section;
  std::string line;
  std::size_t line_number = 0;
  std::set<std::pair<std::string, std::string>> seen;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError("unterminated section header", line_number);
      section = std::string(trim(text.substr(1, text.size() - 2)));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_number);
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));
    const auto it = lookup.find({section, key});
    if (it == lookup.end()) {
      throw ParseError("unknown key '" + key + "' in section [" + section + "]",
                       line_number);
    }
    if (!seen.insert({section, key}).second) {
      throw ParseError("duplicate key '" + key + "'", line_number);
    }
    it->second->parse(spec, value, line_number);
  }
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file " + path.string());
  ExperimentSpec spec = parse_experiment(in);
  if (!spec.data_file.empty() && std::filesystem::path(spec.data_file).is_relative()) {
    spec.data_file = (path.parent_path() / spec.data_file).string();
  }
  return spec;
}

std::string serialize_experiment(const ExperimentSpec& spec) {
  std::ostringstream out;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    out << f.key << " = " << f.print(spec) << '\n';
  }
  return out.str();
}

}  // namespace lqmc
