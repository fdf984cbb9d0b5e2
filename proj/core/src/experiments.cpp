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

#include "rwrs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace rwrs {
namespace {

std::uint64_t walk_seed(const ExperimentConfig& config, std::int64_t trial) {
  return stream_seed(config.master_seed, static_cast<std::uint64_t>(trial), Stream::walk);
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& values, F format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format(values[i]);
  }
  return out;
}

std::string describe_law(const JumpLaw& law) {
  switch (law.family()) {
    case JumpFamily::lazy_nearest_neighbour:
      return "lazy(laziness=" + format_real(law.laziness()) + ")";
    case JumpFamily::pareto:
      return "pareto(alpha=" + format_real(law.alpha()) +
             ",zero_mass=" + format_real(law.zero_mass()) + ")";
    case JumpFamily::unit_step:
      return "unit_step";
  }
  return "unknown";
}

TrialSeries make_series(std::int64_t n, double a_n, std::vector<double> per_trial,
                        const ExperimentConfig& config) {
  TrialSeries series{n, a_n, std::move(per_trial), {}};
  series.distribution =
      EmpiricalDistribution(series.per_trial, {config_digest(config), config.master_seed});
  return series;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::domain_error("trials must be at least 1");
  if (config.n_grid.empty()) throw std::domain_error("n grid must be nonempty");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 1) throw std::domain_error("window lengths must be positive");
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      throw std::domain_error("n grid must be strictly increasing");
    }
  }
  for (double e : config.epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw std::domain_error("epsilons must lie in (0, 1)");
  }
  make_bernoulli_scenery(config.scenery_probs);
}

std::string describe(const ExperimentConfig& config) {
  return "law=" + describe_law(config.law) +
         ";scenery=" + join(config.scenery_probs, format_real) +
         ";n=" + join(config.n_grid, [](std::int64_t n) { return std::to_string(n); }) +
         ";trials=" + std::to_string(config.trials) +
         ";eps=" + join(config.epsilons, format_real) +
         ";seed=" + std::to_string(config.master_seed);
}

std::uint64_t config_digest(const ExperimentConfig& config) {
  return fnv1a64(describe(config));
}

std::vector<TrialSeries> run_range_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<TrialSeries> out;
  for (std::int64_t n : config.n_grid) {
    const double a = normalizing_constant(config.law, n);
    std::vector<double> samples(static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, [&](std::int64_t t) {
      const auto field = simulate_occupation(config.law, n, walk_seed(config, t));
      samples[static_cast<std::size_t>(t)] = static_cast<double>(field.range_size()) / a;
    });
    out.push_back(make_series(n, a, std::move(samples), config));
  }
  return out;
}

std::vector<ComplexitySeries> run_complexity_experiment(const ExperimentConfig& config) {
  validate(config);
  if (config.epsilons.empty()) throw std::domain_error("complexity needs at least one epsilon");
  const SceneryModel model = make_bernoulli_scenery(config.scenery_probs);
  const auto alphabet = static_cast<std::int64_t>(model.alphabet_size());
  std::vector<ComplexitySeries> out;
  for (std::int64_t n : config.n_grid) {
    const double a = normalizing_constant(config.law, n);
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, [&](std::int64_t t) {
      sizes[static_cast<std::size_t>(t)] =
          simulate_occupation(config.law, n, walk_seed(config, t)).range_size();
    });
    std::vector<double> range_over_a(sizes.size());
    std::transform(sizes.begin(), sizes.end(), range_over_a.begin(),
                   [a](std::int64_t m) { return static_cast<double>(m) / a; });
    for (double eps : config.epsilons) {
      // Phi depends on the walk only through #V_n.
      std::map<std::int64_t, double> phi_by_size;
      for (std::int64_t m : sizes) phi_by_size.emplace(m, 0.0);
      std::vector<std::pair<const std::int64_t, double>*> slots;
      for (auto& entry : phi_by_size) slots.push_back(&entry);
      parallel_for(static_cast<std::int64_t>(slots.size()), [&](std::int64_t i) {
        auto* slot = slots[static_cast<std::size_t>(i)];
        slot->second = log2_phi_for_size(model, slot->first, eps);
      });
      ComplexitySeries series;
      series.n = n;
      series.epsilon = eps;
      series.a_n = a;
      series.range_size = sizes;
      series.range_over_a = range_over_a;
      series.log2_phi.resize(sizes.size());
      std::vector<double> normalized(sizes.size());
      for (std::size_t t = 0; t < sizes.size(); ++t) {
        series.log2_phi[t] = phi_by_size[sizes[t]];
        normalized[t] = series.log2_phi[t] / a;
      }
      series.normalized = make_series(n, a, std::move(normalized), config);
      series.log2_q_upper = q_upper_bound(n, std::min(eps, 0.5), alphabet);
      out.push_back(std::move(series));
    }
  }
  return out;
}

TrialSeries run_endpoint_experiment(const JumpLaw& law, std::int64_t n, std::int64_t trials,
                                    std::uint64_t seed) {
  if (trials < 1) throw std::domain_error("trials must be positive");
  const double a = normalizing_constant(law, n);
  std::vector<double> samples(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t t) {
    const auto s = simulate_endpoint(law, n, stream_seed(seed, static_cast<std::uint64_t>(t), Stream::walk));
    samples[static_cast<std::size_t>(t)] = static_cast<double>(s) / a;
  });
  TrialSeries series{n, a, samples, {}};
  series.distribution = EmpiricalDistribution(std::move(samples), {0, seed});
  return series;
}

double edim_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4) throw std::domain_error("slope fit needs at least four points");
  double lo = INFINITY;
  double hi = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [n, v] : points) {
    if (!(n > 0.0) || !(v > 0.0)) throw std::domain_error("slope fit needs positive values");
    lo = std::min(lo, n);
    hi = std::max(hi, n);
    sx += std::log(n);
    sy += std::log(v);
  }
  if (hi / lo < 30.0) throw std::domain_error("n values spread too little for a slope fit");
  const double k = static_cast<double>(points.size());
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [n, v] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  return sxy / sxx;
}

EdimResult run_edim_experiment(const ExperimentConfig& config) {
  if (config.epsilons.empty()) throw std::domain_error("edim needs an epsilon");
  ExperimentConfig single = config;
  single.epsilons = {config.epsilons.front()};
  EdimResult result;
  result.series = run_complexity_experiment(single);
  for (const auto& s : result.series) {
    const EmpiricalDistribution d(s.log2_phi);
    result.points.emplace_back(static_cast<double>(s.n), d.median());
  }
  result.slope = edim_slope(result.points);
  return result;
}

std::vector<TrialSeries> local_time_experiment(const ExperimentConfig& config, const HyperSet& e) {
  validate(config);
  std::vector<TrialSeries> out;
  for (std::int64_t n : config.n_grid) {
    const double a = normalizing_constant(config.law, n);
    const double abar = integrated_normalizer(config.law, n);
    std::vector<double> samples(static_cast<std::size_t>(config.trials));
    parallel_for(config.trials, [&](std::int64_t t) {
      const auto field = simulate_occupation(config.law, n, walk_seed(config, t));
      samples[static_cast<std::size_t>(t)] = min_local_time_over(field, e, a, abar);
    });
    out.push_back(make_series(n, a, std::move(samples), config));
  }
  return out;
}

Lemma4Report lemma4_diagnostic(const ExperimentConfig& config, double threshold, int kappa_cap,
                               double frequency_slack) {
  validate(config);
  if (!(threshold > 0.0)) throw std::domain_error("threshold must be positive");
  const std::int64_t n = config.n_grid.front();
  const double a = normalizing_constant(config.law, n);
  const double abar = integrated_normalizer(config.law, n);
  const auto alphabet = static_cast<int>(config.scenery_probs.size());
  const auto trials = static_cast<std::size_t>(config.trials);

  std::vector<OccupationField> fields(trials);
  std::vector<HyperSet> ranges(trials, HyperSet::point(0.0));
  parallel_for(config.trials, [&](std::int64_t t) {
    const auto i = static_cast<std::size_t>(t);
    fields[i] = simulate_occupation(config.law, n, walk_seed(config, t));
    ranges[i] = filled_range(fields[i], a);
  });
  const Lemma4Cover cover = lemma4_cover_auto(ranges, alphabet, threshold, kappa_cap, 0.9);

  Lemma4Report report;
  report.n = n;
  report.kappa = cover.kappa;
  report.threshold = threshold;
  report.coverage = cover.coverage;
  report.frequency_slack = frequency_slack;
  report.q_bound_over_a.assign(trials, std::nullopt);
  report.class_of.assign(trials, 0);
  std::size_t good = 0;
  for (const auto& cls : cover.classes) {
    for (std::size_t i : cls.members) report.class_of[i] = report.classes.size();
    Lemma4ClassReport row;
    row.members = cls.members.size();
    row.admissible = cls.pair.admissible;
    row.mu = cls.pair.mu;
    row.M = cls.pair.M;
    if (!cls.pair.gamma.empty()) {
      const HyperSet gamma = cls.pair.gamma.closure();
      std::vector<double> y;
      y.reserve(cls.members.size());
      for (std::size_t i : cls.members) {
        try {
          y.push_back(min_local_time_over(fields[i], gamma, a, abar));
        } catch (const std::domain_error&) {
          y.push_back(0.0);
        }
      }
      row.theta = 0.5 * EmpiricalDistribution(y).median();
      const auto hits = std::count_if(y.begin(), y.end(), [&](double v) { return v > row.theta; });
      row.event_frequency = static_cast<double>(hits) / static_cast<double>(y.size());
    }
    if (row.admissible) {
      if (row.event_frequency > 1.0 - frequency_slack) good += row.members;
      for (std::size_t i : cls.members) {
        const auto bound = q_rwrs_bound(fields[i], cls.pair, a, abar, row.theta, alphabet);
        if (bound) report.q_bound_over_a[i] = *bound / a;
      }
    }
    report.classes.push_back(row);
  }
  report.good_mass = static_cast<double>(good) / static_cast<double>(trials);
  return report;
}

}  // namespace rwrs
