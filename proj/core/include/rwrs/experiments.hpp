// Copyright 2026 The rwrs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Monte Carlo harness: seeded trial loops over walks and sceneries, the
// empirical distributions they produce, reference laws, and KS distances.
//
// Trial t of an experiment with master seed s draws its walk from
// stream_seed(s, t, Stream::walk) and its scenery from
// stream_seed(s, t, Stream::scenery); reference samplers use
// Stream::reference. Results are stored per trial index, so the output does
// not depend on how trials were spread over worker threads.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rwrs/complexity.hpp"
#include "rwrs/hyperspace.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/stable_laws.hpp"
#include "rwrs/walk_engine.hpp"

namespace rwrs {

struct Provenance {
  std::uint64_t config_digest = 0;
  std::uint64_t master_seed = 0;
};

/// Sorted sample set with its right-continuous empirical CDF.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> samples, Provenance provenance = {});

  std::span<const double> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const Provenance& provenance() const noexcept { return provenance_; }

  /// #{samples <= x} / size.
  double cdf(double x) const noexcept;
  double mean() const;
  /// Sample standard deviation (n - 1 denominator); 0 for one sample.
  double sd() const;
  double median() const;
  /// Type-7 (linear interpolation) quantile.
  double quantile(double q) const;

  /// Sorted union of both sample sets; keeps a's provenance.
  static EmpiricalDistribution merge(const EmpiricalDistribution& a,
                                     const EmpiricalDistribution& b);

  friend bool operator==(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    return a.samples_ == b.samples_;
  }

 private:
  std::vector<double> samples_;
  Provenance provenance_;
};

/// sup_x |F1(x) - F2(x)| by a sweep over the merged samples. Throws
/// std::domain_error if either side is empty.
double ks_statistic(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2);
/// sup_x |F(x) - G(x)| against a continuous CDF G.
double ks_statistic(const EmpiricalDistribution& d, const std::function<double(double)>& cdf);

double normal_cdf(double x);
/// CDF of the symmetric stable law with E exp(itY) = exp(-|t|^alpha / alpha),
/// 1 < alpha <= 2, by numerical inversion of the characteristic function.
double stable_cdf(double alpha, double x);

/// FNV-1a, 64-bit.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Runs body(i) for i in [0, count) on worker_count() threads. The first
/// exception thrown by a body is rethrown after all workers stop.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body);

struct ExperimentConfig {
  JumpLaw law;
  std::vector<double> scenery_probs{0.5, 0.5};
  std::vector<std::int64_t> n_grid{100000};
  std::int64_t trials = 1000;
  std::vector<double> epsilons{0.1};
  std::uint64_t master_seed = 1;
};

/// Throws std::domain_error unless trials >= 1, n_grid is nonempty,
/// positive and strictly increasing, and every epsilon lies in (0, 1).
void validate(const ExperimentConfig& config);

/// Canonical one-line text form; the config digest hashes this string.
std::string describe(const ExperimentConfig& config);
std::uint64_t config_digest(const ExperimentConfig& config);

/// One statistic per trial at one window length.
struct TrialSeries {
  std::int64_t n = 0;
  double a_n = 0.0;
  std::vector<double> per_trial;  // indexed by trial
  EmpiricalDistribution distribution;
};

/// #V_n / a(n) for every n in the grid.
std::vector<TrialSeries> run_range_experiment(const ExperimentConfig& config);

struct ComplexitySeries {
  std::int64_t n = 0;
  double epsilon = 0.0;
  double a_n = 0.0;
  TrialSeries normalized;              // log2 Phi / a(n)
  std::vector<double> log2_phi;        // per trial
  std::vector<double> range_over_a;    // #V_n / a(n), per trial
  std::vector<std::int64_t> range_size;
  double log2_q_upper = 0.0;           // Radioactivity bound at (n, eps)
};

/// For every n in the grid and every epsilon: Phi over the walk's range,
/// with the scenery given by config.scenery_probs.
std::vector<ComplexitySeries> run_complexity_experiment(const ExperimentConfig& config);

/// (max - min) / sqrt(steps) of a +-1 walk, per trial; steps >= 10^4.
std::vector<double> brownian_range_samples(std::int64_t steps, std::int64_t trials,
                                           std::uint64_t seed);
EmpiricalDistribution brownian_range_reference(std::int64_t steps, std::int64_t trials,
                                               std::uint64_t seed);

/// #V_steps / a(steps) of the pareto(alpha, 0.2) walk per trial,
/// 1 < alpha < 2. This is a self-consistency proxy, not an independent
/// oracle.
std::vector<double> stable_range_samples(double alpha, std::int64_t steps, std::int64_t trials,
                                         std::uint64_t seed);
EmpiricalDistribution stable_range_reference(double alpha, std::int64_t steps,
                                             std::int64_t trials, std::uint64_t seed);

/// S_n / a(n) per trial (n jumps).
TrialSeries run_endpoint_experiment(const JumpLaw& law, std::int64_t n, std::int64_t trials,
                                    std::uint64_t seed);

/// Least-squares slope of log(summary) against log(n). Needs at least four
/// points, positive values, and max n / min n >= 30.
double edim_slope(std::span<const std::pair<double, double>> points);

struct EdimResult {
  std::vector<std::pair<double, double>> points;  // (n, median log2 Phi)
  std::vector<ComplexitySeries> series;
  double slope = 0.0;
};

/// Phi at config.epsilons.front() for every n in the grid; the summary per n
/// is the median of log2 Phi.
EdimResult run_edim_experiment(const ExperimentConfig& config);

/// Y_{E,n} per trial for every n in the grid.
std::vector<TrialSeries> local_time_experiment(const ExperimentConfig& config, const HyperSet& e);

struct Lemma4ClassReport {
  std::size_t members = 0;
  bool admissible = false;
  double mu = 0.0;
  double M = 0.0;
  double theta = 0.0;            // half the class median of Y over Gamma
  double event_frequency = 0.0;  // fraction of members with Y > theta
};

struct Lemma4Report {
  std::int64_t n = 0;
  int kappa = 0;
  double threshold = 0.0;
  double coverage = 0.0;  // trial mass in admissible classes
  /// Trial mass in admissible classes whose event frequency exceeds
  /// 1 - frequency_slack.
  double good_mass = 0.0;
  double frequency_slack = 0.1;
  std::vector<Lemma4ClassReport> classes;
  std::vector<std::size_t> class_of;  // per trial, index into classes
  /// Per trial: q_rwrs_bound / a(n) with the class theta, when the trial
  /// lies in an admissible class and its event holds.
  std::vector<std::optional<double>> q_bound_over_a;
};

/// Signatures come from the filled scaled range (runs of consecutive visited
/// sites become intervals). Uses n = config.n_grid.front().
Lemma4Report lemma4_diagnostic(const ExperimentConfig& config, double threshold,
                               int kappa_cap = 8, double frequency_slack = 0.1);

struct SmallSuiteReport {
  std::int64_t instances = 0;
  std::int64_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty() && instances > 0; }
};

/// Randomized exhaustive checks on tiny instances: Phi by classes against
/// enumeration, Phi optimality against subset search (at most 16 words),
/// Phi / Q <= K <= Phi, K monotone under merging two scenery symbols, and
/// the 2-block refinement inequalities on direct products.
SmallSuiteReport run_small_suite(std::uint64_t seed, std::int64_t instances);

}  // namespace rwrs
