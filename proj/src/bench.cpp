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

#include "lqmc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <array>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lqmc/csv.hpp"
#include "lqmc/error.hpp"
#include "lqmc/gf2.hpp"
#include "lqmc/lfsr.hpp"
#include "lqmc/prng.hpp"

namespace lqmc {
namespace {

// Stream layout: order in bits 40+, replicate in bits 8..39, purpose below.
enum StreamTag : std::uint64_t {
  kShiftMain = 0,
  kShiftBurnin = 1,
  kLmcMain = 2,
  kLmcBurnin = 3,
  kBatchLqmc = 4,
  kBatchLmc = 5,
};

std::uint64_t stream_id(int order, int replicate, StreamTag tag) {
  return (static_cast<std::uint64_t>(order) << 40) |
         (static_cast<std::uint64_t>(replicate) << 8) | tag;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(
      std::clamp<long>(threads, 1, static_cast<long>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Running sums of x_j, x_j^2 and 1{x_j > 0}.
struct MomentAccumulator {
  explicit MomentAccumulator(int d)
      : sum(Eigen::VectorXd::Zero(d)),
        sum_sq(Eigen::VectorXd::Zero(d)),
        positive(Eigen::VectorXd::Zero(d)) {}

  void add(const Eigen::VectorXd& theta) {
    sum += theta;
    sum_sq += theta.cwiseAbs2();
    positive += (theta.array() > 0.0).cast<double>().matrix();
    ++count;
  }

  Eigen::VectorXd mean(TestFamily family) const {
    const double inv = 1.0 / static_cast<double>(count);
    switch (family) {
      case TestFamily::kCoordinate:
        return sum * inv;
      case TestFamily::kSquare:
        return sum_sq * inv;
      case TestFamily::kIndicator:
        return positive * inv;
    }
    return sum * inv;
  }

  Eigen::VectorXd sum, sum_sq, positive;
  std::int64_t count = 0;
};

constexpr TestFamily kAllFamilies[] = {TestFamily::kCoordinate,
                                       TestFamily::kSquare,
                                       TestFamily::kIndicator};

}  // namespace

double estimate(const ChainRun& run, const TestFunction& f,
                std::int64_t discard) {
  if (discard < 0 || discard >= run.size()) {
    throw DomainError("estimate: nothing left to average after discarding " +
                      std::to_string(discard) + " of " +
                      std::to_string(run.size()) + " samples");
  }
  if (f.coordinate < 0 || f.coordinate >= run.trajectory.cols()) {
    throw DomainError("estimate: test function coordinate out of range");
  }
  double total = 0.0;
  for (std::int64_t k = discard; k < run.size(); ++k) {
    total += f(run.trajectory(k, f.coordinate));
  }
  return total / static_cast<double>(run.size() - discard);
}

std::string_view method_name(Method method) {
  return method == Method::kLmc ? "LMC" : "LQMC";
}

const MseRow& MseReport::row(Method method, int order, TestFamily family) const {
  for (const auto& r : rows) {
    if (r.method == method && r.order == order && r.family == family) return r;
  }
  throw std::out_of_range("no report row for that method/order/test function");
}

std::unique_ptr<Potential> make_potential(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.model == "quadratic") {
    return std::make_unique<QuadraticPotential>(spec.dim);
  }
  if (spec.model == "double_well") return double_well_potential();

  const DataKind kind = parse_data_kind(spec.model);
  SyntheticDataset data;
  if (!spec.data_file.empty()) {
    std::ifstream in(spec.data_file);
    if (!in) throw ConfigError("cannot open data file " + spec.data_file);
    data = read_dataset_csv(in);
    if (data.kind != kind) throw ConfigError("data file holds a different model");
  } else {
    data = synthesize_data(kind, spec.n_obs, spec.dim, spec.data_seed,
                           spec.noise_variance);
  }
  switch (kind) {
    case DataKind::kLogistic:
      return logistic_potential(data);
    case DataKind::kLinear:
      return linear_regression_potential(data, spec.noise_variance);
    case DataKind::kCrossed:
      return crossed_effects_potential(data.X);
  }
  throw ConfigError("unreachable model kind");
}

GroundTruth reference_run_truth(const Potential& potential, double h,
                                int log2n, int seeds, std::uint64_t seed,
                                std::int64_t discard,
                                const Eigen::VectorXd& initial, int threads) {
  if (seeds < 1) throw ConfigError("reference run needs at least one seed");
  const int d = potential.dimension();
  const std::int64_t n = std::int64_t{1} << log2n;
  if (discard < 0) discard = n / 8;
  if (discard >= n) throw ConfigError("reference discard exceeds run length");

  std::vector<MomentAccumulator> per_seed(static_cast<std::size_t>(seeds),
                                          MomentAccumulator(d));
  parallel_for(per_seed.size(), threads, [&](std::size_t i) {
    ChainConfig config;
    config.dimension = d;
    config.initial = initial;
    config.iterations = n;
    config.schedule = StepSchedule::constant(h);
    config.drive = PseudoRandomDrive{seed, static_cast<std::uint64_t>(i)};
    MomentAccumulator& acc = per_seed[i];
    run_chain_streaming(potential, config,
                        [&](std::int64_t k, const Eigen::VectorXd& theta) {
                          if (k > discard) acc.add(theta);
                        });
  });

  GroundTruth truth{GroundTruth::Provenance::kReferenceRun, {}, {}, {}, {}, {}, {}, 0.0};
  for (TestFamily family : kAllFamilies) {
    Eigen::MatrixXd means(d, seeds);
    for (int s = 0; s < seeds; ++s) means.col(s) = per_seed[static_cast<std::size_t>(s)].mean(family);
    const Eigen::VectorXd mean = means.rowwise().mean();
    Eigen::VectorXd se = Eigen::VectorXd::Zero(d);
    if (seeds > 1) {
      const Eigen::VectorXd var =
          (means.colwise() - mean).cwiseAbs2().rowwise().sum() / (seeds - 1);
      se = (var / seeds).cwiseSqrt();
    }
    switch (family) {
      case TestFamily::kCoordinate:
        truth.coordinate = mean;
        truth.coordinate_stderr = se;
        break;
      case TestFamily::kSquare:
        truth.square = mean;
        truth.square_stderr = se;
        break;
      case TestFamily::kIndicator:
        truth.indicator = mean;
        truth.indicator_stderr = se;
        break;
    }
  }
  return truth;
}

GroundTruth ground_truth_for(const ExperimentSpec& spec,
                             const Potential& potential, int threads) {
  const int d = potential.dimension();
  if (spec.model == "linear") {
    const auto& linear = dynamic_cast<const LinearRegressionPotential&>(potential);
    SyntheticDataset data{DataKind::kLinear, linear.design(), linear.responses(),
                          {}, spec.data_seed};
    return closed_form_posterior(data, linear.noise_variance());
  }
  if (spec.model == "quadratic") {
    GroundTruth truth{GroundTruth::Provenance::kClosedForm, {}, {}, {}, {}, {}, {}, 0.0};
    truth.coordinate = Eigen::VectorXd::Zero(d);
    truth.square = Eigen::VectorXd::Ones(d);
    truth.indicator = Eigen::VectorXd::Constant(d, 0.5);
    return truth;
  }
  if (spec.model == "double_well") return double_well_truth();
  if (spec.truth_seeds < 1) {
    throw ConfigError("no ground truth for model '" + spec.model +
                      "': set [truth] seeds >= 1 for a reference run");
  }
  const Eigen::VectorXd initial =
      spec.initial.empty()
          ? Eigen::VectorXd::Zero(d)
          : Eigen::Map<const Eigen::VectorXd>(spec.initial.data(), d).eval();
  return reference_run_truth(potential, spec.truth_h, spec.truth_log2n,
                             spec.truth_seeds, spec.truth_seed,
                             spec.truth_discard, initial, threads);
}

MseReport run_comparison(const ExperimentSpec& spec, int threads) {
  spec.validate();
  const auto potential = make_potential(spec);
  const GroundTruth truth = ground_truth_for(spec, *potential, threads);
  return run_comparison(spec, *potential, truth, threads);
}

MseReport run_comparison(const ExperimentSpec& spec, const Potential& potential,
                         const GroundTruth& truth, int threads) {
  spec.validate();
  const int d = potential.dimension();
  if (d != spec.dimension()) {
    throw ConfigError("potential dimension does not match the spec");
  }
  for (TestFamily family : spec.tests) {
    if (!truth.has(family) || truth.values(family).size() != d) {
      throw ConfigError("ground truth missing for test function '" +
                        std::string(family_name(family)) + "'");
    }
  }
  const Eigen::VectorXd initial =
      spec.initial.empty()
          ? Eigen::VectorXd::Zero(d)
          : Eigen::Map<const Eigen::VectorXd>(spec.initial.data(), d).eval();

  MseReport report;
  report.model = spec.model;
  report.truth = truth;
  auto meta = [&](std::string key, std::string value) {
    report.metadata.emplace_back(std::move(key), std::move(value));
  };
  meta("experiment", spec.name);
  meta("model", spec.model);
  meta("dimension", std::to_string(d));
  meta("seed", std::to_string(spec.seed));
  meta("replicates", std::to_string(spec.replicates));
  meta("truth.provenance", std::string(provenance_name(truth.provenance)));
  if (truth.provenance == GroundTruth::Provenance::kQuadrature) {
    meta("truth.quadrature_error", format_double(truth.quadrature_error));
  }
  if (const auto c = potential.constants()) {
    meta("constants.L", format_double(c->lipschitz));
    meta("constants.M", format_double(c->convexity));
  }

  // Shared deterministic skeletons.
  std::map<int, std::shared_ptr<const CudSequence>> sequences;
  auto sequence_for = [&](int order) {
    auto& slot = sequences[order];
    if (!slot) {
      slot = std::make_shared<const CudSequence>(
          generate_cud(default_config(order, spec.offset)));
    }
    return slot;
  };
  for (int m : spec.orders) sequence_for(m);
  if (spec.burnin_order > 0) sequence_for(spec.burnin_order);

  for (int m : spec.orders) {
    const auto& seq = *sequences.at(m);
    const std::int64_t n = spec.iterations(m);
    const std::string prefix = "m" + std::to_string(m) + ".";
    const StepSchedule schedule = spec.schedule_for(n);
    const int width = coprime_width(seq.size(), d);
    std::ostringstream poly;
    poly << "0x" << std::hex << seq.config().poly().coefficients();
    meta(prefix + "polynomial", poly.str());
    meta(prefix + "offset", std::to_string(seq.config().offset()));
    meta(prefix + "period", std::to_string(seq.size()));
    meta(prefix + "iterations", std::to_string(n));
    meta(prefix + "stored_width", std::to_string(width));
    meta(prefix + "schedule", schedule.describe());
    if (const auto c = potential.constants();
        c && schedule.kind() == StepSchedule::Kind::kConstant) {
      const double h = schedule(1);
      const double rho = 1.0 - h * c->convexity;
      meta(prefix + "rho", format_double(rho));
      if (rho > 0.0 && rho < 1.0) {
        const auto lag =
            static_cast<std::uint64_t>(std::ceil(0.5 * std::log(h) / std::log(rho)));
        meta(prefix + "lag", std::to_string(lag));
        meta(prefix + "gcd_d_lag_n",
             std::to_string(std::gcd(static_cast<std::uint64_t>(d) * lag,
                                     static_cast<std::uint64_t>(seq.size()))));
      }
    }
  }

  struct Job {
    Method method;
    std::size_t order_index;
    int replicate;
  };
  std::vector<Job> jobs;
  for (std::size_t oi = 0; oi < spec.orders.size(); ++oi) {
    for (Method method : {Method::kLqmc, Method::kLmc}) {
      for (int r = 0; r < spec.replicates; ++r) jobs.push_back({method, oi, r});
    }
  }
  std::vector<std::array<Eigen::VectorXd, 3>> estimates(jobs.size());

  parallel_for(jobs.size(), threads, [&](std::size_t job_index) {
    const Job& job = jobs[job_index];
    const int m = spec.orders[job.order_index];
    const std::int64_t n = spec.iterations(m);
    const StepSchedule schedule = spec.schedule_for(n);
    const bool qmc = job.method == Method::kLqmc;

    ChainConfig config;
    config.dimension = d;
    config.initial = initial;
    config.minibatch = spec.minibatch;
    config.minibatch_seed = spec.seed;
    config.minibatch_stream =
        stream_id(m, job.replicate, qmc ? kBatchLqmc : kBatchLmc);

    if (spec.burnin_order > 0) {
      const std::int64_t burn = (std::int64_t{1} << spec.burnin_order) - 1;
      config.iterations = burn;
      config.schedule = StepSchedule::constant(schedule(1));
      if (qmc) {
        BaselinePrng shift_rng(spec.seed, stream_id(m, job.replicate, kShiftBurnin));
        config.drive = CudDrive{std::make_shared<const DriveMatrix>(
            build_drive_matrix(sequences.at(spec.burnin_order), d, shift_rng))};
      } else {
        config.drive =
            PseudoRandomDrive{spec.seed, stream_id(m, job.replicate, kLmcBurnin)};
      }
      config.initial = run_chain_streaming(potential, config,
                                           [](std::int64_t, const Eigen::VectorXd&) {});
      config.minibatch_stream += 1u << 4;
    }

    config.iterations = n;
    config.schedule = schedule;
    if (qmc) {
      BaselinePrng shift_rng(spec.seed, stream_id(m, job.replicate, kShiftMain));
      config.drive = CudDrive{std::make_shared<const DriveMatrix>(
          build_drive_matrix(sequences.at(m), d, shift_rng))};
    } else {
      config.drive = PseudoRandomDrive{spec.seed, stream_id(m, job.replicate, kLmcMain)};
    }
    MomentAccumulator acc(d);
    run_chain_streaming(potential, config,
                        [&](std::int64_t, const Eigen::VectorXd& theta) { acc.add(theta); });
    for (std::size_t f = 0; f < 3; ++f) estimates[job_index][f] = acc.mean(kAllFamilies[f]);
  });

  // Deterministic reduction in job order.
  for (std::size_t oi = 0; oi < spec.orders.size(); ++oi) {
    const int m = spec.orders[oi];
    const std::int64_t n = spec.iterations(m);
    const std::string schedule = spec.schedule_for(n).describe();
    for (Method method : {Method::kLqmc, Method::kLmc}) {
      for (TestFamily family : spec.tests) {
        const auto f = static_cast<std::size_t>(family);
        const Eigen::VectorXd& target = truth.values(family);
        std::vector<double> per_replicate;
        for (std::size_t j = 0; j < jobs.size(); ++j) {
          if (jobs[j].order_index != oi || jobs[j].method != method) continue;
          const Eigen::VectorXd& est = estimates[j][f];
          per_replicate.push_back((est - target).squaredNorm() / d);
          for (int c = 0; c < d; ++c) {
            report.replicates.push_back(
                {method, m, jobs[j].replicate, family, c, est[c], target[c]});
          }
        }
        const double count = static_cast<double>(per_replicate.size());
        const double mean =
            std::accumulate(per_replicate.begin(), per_replicate.end(), 0.0) / count;
        double ss = 0.0;
        for (double v : per_replicate) ss += (v - mean) * (v - mean);
        const double se = std::sqrt(ss / (count - 1.0) / count);
        report.rows.push_back({spec.model, method, m, n, schedule, family, mean, se,
                               static_cast<int>(per_replicate.size())});
      }
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const MseReport& report) {
  out << "model,method,m,n,schedule,test_fn,mse,stderr,replicates\n";
  for (const auto& r : report.rows) {
    out << r.model << ',' << method_name(r.method) << ',' << r.order << ','
        << r.iterations << ',' << r.schedule << ',' << family_name(r.family)
        << ',' << format_double(r.mse) << ',' << format_double(r.standard_error)
        << ',' << r.replicates << '\n';
  }
}

void write_replicates_csv(std::ostream& out, const MseReport& report) {
  out << "method,m,replicate,test_fn,coordinate,estimate,truth\n";
  for (const auto& r : report.replicates) {
    out << method_name(r.method) << ',' << r.order << ',' << r.replicate << ','
        << family_name(r.family) << ',' << (r.coordinate + 1) << ','
        << format_double(r.estimate) << ',' << format_double(r.truth) << '\n';
  }
}

void write_metadata(std::ostream& out, const MseReport& report) {
  for (const auto& [key, value] : report.metadata) {
    out << key << " = " << value << '\n';
  }
}

SlopeFit pre_plateau_slope(const std::vector<std::int64_t>& iterations,
                           const std::vector<double>& mse) {
  if (iterations.size() != mse.size()) {
    throw DomainError("slope fit: length mismatch");
  }
  std::size_t used = mse.size();
  while (used >= 2 && mse[used - 1] > 0.75 * mse[used - 2]) --used;
  if (used < 2) throw DomainError("slope fit needs at least two pre-plateau points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < used; ++i) {
    mx += std::log(static_cast<double>(iterations[i]));
    my += std::log(mse[i]);
  }
  mx /= static_cast<double>(used);
  my /= static_cast<double>(used);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < used; ++i) {
    const double dx = std::log(static_cast<double>(iterations[i])) - mx;
    sxy += dx * (std::log(mse[i]) - my);
    sxx += dx * dx;
  }
  return {sxy / sxx, used};
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

namespace {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent,
                     std::uint64_t modulus) {
  unsigned __int128 result = 1;
  unsigned __int128 b = base % modulus;
  while (exponent != 0) {
    if (exponent & 1u) result = result * b % modulus;
    b = b * b % modulus;
    exponent >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace

bool is_primitive_root(std::uint64_t a, std::uint64_t p) {
  if (!is_prime(p) || a % p == 0) return false;
  if (p == 2) return a % 2 == 1;
  for (std::uint64_t q : prime_factors(p - 1)) {
    if (powmod(a, (p - 1) / q, p) == 1) return false;
  }
  return true;
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
  if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
  for (std::uint64_t a = 1; a < p + 1; ++a) {
    if (is_primitive_root(a, p)) return a;
  }
  throw ConfigError("no primitive root found");
}

std::vector<std::uint64_t> lcg_sequence(std::uint64_t p, std::uint64_t a,
                                        std::uint64_t seed) {
  if (!is_prime(p)) throw ConfigError("LCG modulus " + std::to_string(p) + " is not prime");
  if (!is_primitive_root(a, p)) {
    throw ConfigError("multiplier " + std::to_string(a) +
                      " is not a primitive root mod " + std::to_string(p) +
                      "; the period would be shorter than p - 1");
  }
  if (seed < 1 || seed >= p) throw ConfigError("LCG seed must lie in [1, p)");
  std::vector<std::uint64_t> x;
  x.reserve(p - 1);
  std::uint64_t state = seed;
  for (std::uint64_t i = 0; i + 1 < p; ++i) {
    x.push_back(state);
    state = static_cast<std::uint64_t>(static_cast<unsigned __int128>(state) * a % p);
  }
  return x;
}

PointSet lcg_demo(std::uint64_t p, std::uint64_t a, std::uint64_t seed) {
  const auto x = lcg_sequence(p, a, seed);
  std::vector<double> values(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    values[i] = static_cast<double>(x[i]) / static_cast<double>(p);
  }
  return overlapping_pairs(values);
}

double iid_median_discrepancy(Eigen::Index size, int dimension, int sets,
                              std::uint64_t seed) {
  if (sets < 1) throw DomainError("need at least one point set");
  if (dimension != 1 && dimension != 2) {
    throw DomainError("exact discrepancy available for d = 1, 2 only");
  }
  std::vector<double> values(static_cast<std::size_t>(sets));
  for (int s = 0; s < sets; ++s) {
    BaselinePrng rng(seed, static_cast<std::uint64_t>(s));
    Eigen::MatrixXd points(size, dimension);
    for (Eigen::Index i = 0; i < size; ++i) {
      for (int j = 0; j < dimension; ++j) points(i, j) = rng.uniform();
    }
    const PointSet set(std::move(points));
    values[static_cast<std::size_t>(s)] =
        dimension == 1 ? star_discrepancy_1d(set) : star_discrepancy_2d(set);
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace lqmc
