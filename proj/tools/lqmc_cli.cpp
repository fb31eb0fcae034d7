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

// Command-line front end. Exit codes: 0 success, 2 invalid input or
// configuration, 3 runtime failure, 4 numeric divergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "lqmc/bench.hpp"
#include "lqmc/csv.hpp"
#include "lqmc/discrepancy.hpp"
#include "lqmc/drive.hpp"
#include "lqmc/error.hpp"
#include "lqmc/experiment.hpp"
#include "lqmc/lfsr.hpp"
#include "lqmc/models.hpp"
#include "lqmc/prng.hpp"
#include "lqmc/sampler.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitDiverged = 4;

struct GlobalOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;  // empty = stdout
};

// Single writer for every result file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw lqmc::ConfigError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool is_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct GenOptions {
  int order = 0;
  std::uint64_t offset = 0;
  std::uint64_t count = 0;
  int dim = 0;
  bool pairs = false;
  std::uint64_t lcg = 0;
  std::uint64_t multiplier = 0;
};

void write_points(std::ostream& out, const lqmc::PointSet& set) {
  const auto& p = set.points();
  for (Eigen::Index j = 0; j < p.cols(); ++j) out << (j ? ",u" : "u") << j + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      out << (j ? "," : "") << lqmc::format_double(p(i, j));
    }
    out << '\n';
  }
}

int cmd_gen(const GenOptions& o, const GlobalOptions& g) {
  if (o.lcg != 0) {
    const std::uint64_t a =
        o.multiplier != 0 ? o.multiplier : lqmc::smallest_primitive_root(o.lcg);
    const auto set = lqmc::lcg_demo(o.lcg, a, 1);
    std::cerr << "lcg p=" << o.lcg << " a=" << a << " period=" << set.size() << '\n';
    Output out(g.output);
    write_points(out.stream(), set);
    return 0;
  }
  const auto config = lqmc::default_config(o.order, o.offset);
  const auto seq = std::make_shared<const lqmc::CudSequence>(lqmc::generate_cud(config));
  const std::uint64_t n = seq->size();
  const std::set<std::uint32_t> distinct(seq->numerators().begin(),
                                         seq->numerators().end());
  std::cerr << "m=" << config.order() << " polynomial=0x" << std::hex
            << config.poly().coefficients() << std::dec
            << " offset=" << config.offset() << " period=" << lqmc::lfsr_period(config)
            << " gcd(offset,n)=" << std::gcd(config.offset(), n)
            << " distinct=" << distinct.size() << '\n';

  Output out(g.output);
  if (o.dim > 0) {
    const auto matrix = lqmc::unshifted_drive_matrix(seq, o.dim);
    std::cerr << "d=" << o.dim << " stored_width=" << matrix.stored_width()
              << " gcd(d,n)=" << std::gcd(static_cast<std::uint64_t>(o.dim), n)
              << '\n';
    lqmc::write_drive_csv(out.stream(), matrix);
    return 0;
  }
  const auto values = seq->values();
  if (o.pairs) {
    write_points(out.stream(), lqmc::overlapping_pairs(values));
    return 0;
  }
  const std::uint64_t count = o.count == 0 ? n : std::min<std::uint64_t>(o.count, n);
  out.stream() << "v\n";
  for (std::uint64_t i = 0; i < count; ++i) {
    out.stream() << lqmc::format_double(values[i]) << '\n';
  }
  return 0;
}

struct DiscrepancyOptions {
  std::string input;
  int dim = 2;
  int compare_iid = 0;
};

int cmd_discrepancy(const DiscrepancyOptions& o, const GlobalOptions& g) {
  std::ifstream in(o.input);
  if (!in) throw lqmc::ConfigError("cannot open " + o.input);
  lqmc::PointSet set(lqmc::read_numeric_csv(in, o.dim));
  const double d = o.dim == 1 ? lqmc::star_discrepancy_1d(set)
                              : lqmc::star_discrepancy_2d(set);
  Output out(g.output);
  out.stream() << "points," << set.size() << '\n'
               << "star_discrepancy," << lqmc::format_double(d) << '\n';
  if (o.compare_iid > 0) {
    const double median =
        lqmc::iid_median_discrepancy(set.size(), o.dim, o.compare_iid, g.seed);
    out.stream() << "iid_median," << lqmc::format_double(median) << '\n'
                 << "iid_sets," << o.compare_iid << '\n';
  }
  return 0;
}

struct RunOptions {
  std::string spec;
  std::string replicates;
  bool seed_given = false;
};

int cmd_run(const RunOptions& o, const GlobalOptions& g) {
  lqmc::ExperimentSpec spec = lqmc::load_experiment(o.spec);
  if (o.seed_given) spec.seed = g.seed;
  spec.validate();
  const std::string report_path = !g.output.empty() ? g.output : spec.report;
  const std::string replicates_path =
      !o.replicates.empty() ? o.replicates : spec.replicates_file;

  lqmc::MseReport report;
  std::string stage = "model";
  try {
    const auto potential = lqmc::make_potential(spec);
    stage = "ground truth";
    const auto truth = lqmc::ground_truth_for(spec, *potential, g.threads);
    stage = "comparison";
    report = lqmc::run_comparison(spec, *potential, truth, g.threads);
  } catch (const lqmc::Error&) {
    std::cerr << "stage: " << stage << '\n';
    throw;
  }

  Output out(report_path);
  lqmc::write_report_csv(out.stream(), report);
  if (out.is_file()) {
    std::ofstream meta(report_path + ".meta");
    if (!meta) throw lqmc::ConfigError("cannot write " + report_path + ".meta");
    lqmc::write_metadata(meta, report);
  } else {
    lqmc::write_metadata(std::cerr, report);
  }
  if (!replicates_path.empty()) {
    Output rep(replicates_path);
    lqmc::write_replicates_csv(rep.stream(), report);
  }
  return 0;
}

struct DiagnoseOptions {
  std::string spec;
  std::string model = "quadratic";
  int dim = 2;
  double h = 0.1;
  std::int64_t steps = 20;
  double separation = 1.0;
};

int cmd_diagnose(const DiagnoseOptions& o, const GlobalOptions& g) {
  lqmc::ExperimentSpec spec;
  if (!o.spec.empty()) {
    spec = lqmc::load_experiment(o.spec);
  } else {
    spec.model = o.model;
    spec.dim = o.dim;
  }
  spec.validate();
  const auto potential = lqmc::make_potential(spec);
  const int d = potential->dimension();
  const Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  const Eigen::VectorXd theta_prime = Eigen::VectorXd::Constant(d, o.separation);
  const auto report = lqmc::coupling_diagnostic(
      *potential, theta, theta_prime, o.h, o.steps, lqmc::PseudoRandomDrive{g.seed, 0});

  if (report.step_condition_met && !*report.step_condition_met) {
    std::cerr << "warning: h = " << o.h
              << " exceeds 2 / (L + M); the contraction bound does not apply\n";
  }
  Output out(g.output);
  auto& s = out.stream();
  s << "# model " << potential->name() << " d=" << d << " h=" << lqmc::format_double(o.h);
  if (report.contraction) {
    s << " rho=" << lqmc::format_double(*report.contraction);
    if (report.truncation_lag) s << " lag=" << *report.truncation_lag;
  } else {
    s << " (no smoothness constants; envelope unavailable)";
  }
  s << '\n' << (report.contraction ? "k,distance,ratio,envelope\n" : "k,distance,ratio\n");
  for (std::size_t k = 0; k < report.distances.size(); ++k) {
    s << k << ',' << lqmc::format_double(report.distances[k]) << ',';
    if (k > 0 && report.distances[k - 1] > 0.0) {
      s << lqmc::format_double(report.distances[k] / report.distances[k - 1]);
    }
    if (report.contraction) s << ',' << lqmc::format_double(report.envelope[k]);
    s << '\n';
  }
  return 0;
}

int cmd_table(const GlobalOptions& g) {
  Output out(g.output);
  out.stream() << "m,polynomial,offset,period,defect\n";
  for (const auto& e : lqmc::builtin_table()) {
    const lqmc::Gf2Poly poly(e.order, e.coefficients);
    char mask[16];
    std::snprintf(mask, sizeof mask, "0x%x", e.coefficients);
    out.stream() << e.order << ',' << mask << ',' << e.offset << ','
                 << ((std::uint64_t{1} << e.order) - 1) << ','
                 << lqmc::equidistribution_defect(poly, e.offset, lqmc::kOffsetSearchDims)
                 << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Langevin Monte Carlo driven by LFSR quasi-random sequences"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  auto* seed_opt = app.add_option("--seed", global.seed, "Experiment / baseline PRNG seed");
  app.add_option("--threads", global.threads, "Worker threads for replicates")
      ->check(CLI::PositiveNumber);
  app.add_option("--output,-o", global.output, "Output file (default stdout)");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a CUD sequence, variate matrix or point set");
  gen_cmd->add_option("--m", gen.order, "LFSR order (table range 3..28)");
  gen_cmd->add_option("--offset,-s", gen.offset, "Offset override (0 = table)");
  gen_cmd->add_option("--count", gen.count, "Number of values (0 = full period)");
  gen_cmd->add_option("--dim", gen.dim, "Emit the unshifted n x d variate matrix");
  gen_cmd->add_flag("--pairs", gen.pairs, "Emit cyclic overlapping pairs");
  gen_cmd->add_option("--lcg", gen.lcg, "Emit LCG pairs for prime modulus p instead");
  gen_cmd->add_option("--multiplier", gen.multiplier, "LCG multiplier (default smallest primitive root)");

  DiscrepancyOptions disc;
  auto* disc_cmd = app.add_subcommand("discrepancy", "Exact star discrepancy of a point CSV");
  disc_cmd->add_option("input", disc.input, "Point CSV")->required();
  disc_cmd->add_option("--dim", disc.dim, "Dimension (1 or 2)")->check(CLI::IsMember({1, 2}));
  disc_cmd->add_option("--compare-iid", disc.compare_iid, "Median over R i.i.d. sets")
      ->check(CLI::NonNegativeNumber);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an LMC vs LQMC comparison from a spec file");
  run_cmd->add_option("spec", run.spec, "Experiment spec file")->required();
  run_cmd->add_option("--replicates-out", run.replicates, "Per-replicate CSV");

  DiagnoseOptions diag;
  auto* diag_cmd = app.add_subcommand("diagnose", "Synchronous-coupling contraction check");
  diag_cmd->add_option("--spec", diag.spec, "Take the model from a spec file");
  diag_cmd->add_option("--model", diag.model, "Model kind when no spec is given");
  diag_cmd->add_option("--dim", diag.dim, "Model dimension when no spec is given");
  diag_cmd->set_help_flag("--help", "Print this help message and exit");
  diag_cmd->add_option("--h", diag.h, "Step size")->required();
  diag_cmd->add_option("--steps", diag.steps, "Coupled steps")->check(CLI::PositiveNumber);
  diag_cmd->add_option("--separation", diag.separation, "Initial offset per coordinate");

  app.add_subcommand("table", "List the built-in generators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, global);
    if (disc_cmd->parsed()) return cmd_discrepancy(disc, global);
    if (run_cmd->parsed()) {
      run.seed_given = seed_opt->count() > 0;
      return cmd_run(run, global);
    }
    if (diag_cmd->parsed()) return cmd_diagnose(diag, global);
    return cmd_table(global);
  } catch (const lqmc::DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const lqmc::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const lqmc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const lqmc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const lqmc::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const lqmc::SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
