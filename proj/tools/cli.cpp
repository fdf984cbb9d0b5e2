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

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "rwrs/experiments.hpp"

namespace rwrs::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string subcommand;
  double alpha = 2.0;
  double laziness = 0.5;
  double zero_mass = 0.2;
  std::int64_t n = 100000;
  std::vector<std::int64_t> n_grid{4096, 8192, 16384, 32768, 65536, 131072};
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<double> eps{0.1};
  std::vector<double> probs{0.5, 0.5};
  std::vector<double> interval{-0.5, 0.5};
  std::int64_t steps = 100000;
  std::int64_t ref_trials = 2000;
  bool no_reference = false;
  double threshold = 0.5;
  int kappa_cap = 8;
  std::int64_t instances = 1000;
  std::string out;
  std::string summary;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string list(const std::vector<T>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ',';
    if constexpr (std::is_floating_point_v<T>) {
      s += real(values[i]);
    } else {
      s += std::to_string(values[i]);
    }
  }
  return s;
}

// Canonical text of every option that influences the subcommand's output.
std::string canonical_config(const Options& o) {
  std::ostringstream s;
  s << "subcommand=" << o.subcommand << ";alpha=" << real(o.alpha);
  if (o.alpha == 2.0) {
    s << ";laziness=" << real(o.laziness);
  } else {
    s << ";zero_mass=" << real(o.zero_mass);
  }
  s << ";seed=" << o.seed;
  const std::string& c = o.subcommand;
  if (c == "smalltest") return "subcommand=smalltest;instances=" + std::to_string(o.instances) +
                               ";seed=" + std::to_string(o.seed);
  if (c == "edim") {
    s << ";n_grid=" << list(o.n_grid);
  } else if (c == "reference") {
    s << ";steps=" << o.steps;
  } else {
    s << ";n=" << o.n;
  }
  s << ";trials=" << o.trials;
  if (c == "complexity" || c == "edim") s << ";eps=" << list(o.eps);
  if (c == "complexity" || c == "edim" || c == "lemma4") s << ";probs=" << list(o.probs);
  if (c == "localtime") s << ";interval=" << list(o.interval);
  if (c == "range") {
    s << ";reference=" << (o.no_reference ? "none" : std::to_string(o.steps) + "x" +
                                                         std::to_string(o.ref_trials));
  }
  if (c == "lemma4") s << ";threshold=" << real(o.threshold) << ";kappa_cap=" << o.kappa_cap;
  return s.str();
}

JumpLaw make_law(const Options& o) {
  if (!(o.alpha > 1.0 && o.alpha <= 2.0)) {
    throw UsageError("infeasible configuration: alpha must lie in (1, 2], got " + real(o.alpha));
  }
  return o.alpha == 2.0 ? make_lazy_gaussian_jump(o.laziness) : make_pareto_jump(o.alpha, o.zero_mass);
}

ExperimentConfig make_config(const Options& o, std::vector<std::int64_t> n_grid) {
  ExperimentConfig config{.law = make_law(o)};
  config.scenery_probs = o.probs;
  config.n_grid = std::move(n_grid);
  config.trials = o.trials;
  config.epsilons = o.eps;
  config.master_seed = o.seed;
  validate(config);
  return config;
}

void add_stats(ordered_json& j, std::span<const double> samples) {
  if (samples.empty()) {
    j["mean"] = nullptr;
    j["median"] = nullptr;
    j["sd"] = nullptr;
    j["n_samples"] = 0;
    return;
  }
  const EmpiricalDistribution d(std::vector<double>(samples.begin(), samples.end()));
  j["mean"] = d.mean();
  j["median"] = d.median();
  j["sd"] = d.sd();
  j["n_samples"] = d.size();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << body;
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

struct Output {
  std::string csv_columns;
  std::string csv_rows;
  ordered_json summary = ordered_json::object();
};

void append_row(std::string& rows, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& cell : cells) {
    if (!first) rows += ',';
    rows += cell;
    first = false;
  }
  rows += '\n';
}

Output run_range(const Options& o) {
  const auto config = make_config(o, {o.n});
  const auto series = run_range_experiment(config).front();
  Output out;
  out.csv_columns = "trial,sample";
  for (std::size_t t = 0; t < series.per_trial.size(); ++t) {
    append_row(out.csv_rows, {std::to_string(t), real(series.per_trial[t])});
  }
  add_stats(out.summary, series.per_trial);
  if (!o.no_reference) {
    const auto reference = o.alpha == 2.0
                               ? brownian_range_reference(o.steps, o.ref_trials, o.seed)
                               : stable_range_reference(o.alpha, o.steps, o.ref_trials, o.seed);
    out.summary["ks_vs_reference"] = ks_statistic(series.distribution, reference);
    out.summary["reference"] = o.alpha == 2.0 ? "brownian_range" : "stable_range_self_consistency";
  }
  out.summary["a_n"] = series.a_n;
  return out;
}

Output run_complexity(const Options& o) {
  const auto config = make_config(o, {o.n});
  const auto all = run_complexity_experiment(config);
  Output out;
  out.csv_columns = "trial,epsilon,sample";
  ordered_json by_eps = ordered_json::array();
  for (const auto& s : all) {
    for (std::size_t t = 0; t < s.normalized.per_trial.size(); ++t) {
      append_row(out.csv_rows, {std::to_string(t), real(s.epsilon), real(s.normalized.per_trial[t])});
    }
    ordered_json row;
    row["epsilon"] = s.epsilon;
    add_stats(row, s.normalized.per_trial);
    row["log2_q_upper"] = s.log2_q_upper;
    row["ks_vs_range"] = ks_statistic(s.normalized.distribution, EmpiricalDistribution(s.range_over_a));
    by_eps.push_back(row);
  }
  add_stats(out.summary, all.front().normalized.per_trial);
  out.summary["entropy_bits"] = make_bernoulli_scenery(o.probs).entropy_bits();
  out.summary["a_n"] = all.front().a_n;
  out.summary["by_epsilon"] = by_eps;
  return out;
}

Output run_localtime(const Options& o) {
  if (o.interval.empty() || o.interval.size() % 2 != 0) {
    throw UsageError("--interval needs lo,hi pairs");
  }
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < o.interval.size(); i += 2) parts.push_back({o.interval[i], o.interval[i + 1]});
  const auto e = HyperSet::from_intervals(parts);
  const auto config = make_config(o, {o.n});
  const auto series = local_time_experiment(config, e).front();
  Output out;
  out.csv_columns = "trial,sample";
  for (std::size_t t = 0; t < series.per_trial.size(); ++t) {
    append_row(out.csv_rows, {std::to_string(t), real(series.per_trial[t])});
  }
  add_stats(out.summary, series.per_trial);
  out.summary["a_n"] = series.a_n;
  out.summary["abar_n"] = integrated_normalizer(config.law, o.n);
  return out;
}

Output run_edim(const Options& o) {
  const auto config = make_config(o, o.n_grid);
  const auto result = run_edim_experiment(config);
  Output out;
  out.csv_columns = "n,trial,sample";
  for (const auto& s : result.series) {
    for (std::size_t t = 0; t < s.log2_phi.size(); ++t) {
      append_row(out.csv_rows, {std::to_string(s.n), std::to_string(t), real(s.log2_phi[t])});
    }
  }
  add_stats(out.summary, result.series.back().log2_phi);
  out.summary["slope"] = result.slope;
  out.summary["target_slope"] = 1.0 / o.alpha;
  ordered_json points = ordered_json::array();
  for (const auto& [n, v] : result.points) points.push_back({{"n", n}, {"median_log2_phi", v}});
  out.summary["points"] = points;
  return out;
}

Output run_reference(const Options& o) {
  make_law(o);
  const auto samples = o.alpha == 2.0 ? brownian_range_samples(o.steps, o.trials, o.seed)
                                      : stable_range_samples(o.alpha, o.steps, o.trials, o.seed);
  Output out;
  out.csv_columns = "trial,sample";
  for (std::size_t t = 0; t < samples.size(); ++t) {
    append_row(out.csv_rows, {std::to_string(t), real(samples[t])});
  }
  add_stats(out.summary, samples);
  out.summary["reference"] = o.alpha == 2.0 ? "brownian_range" : "stable_range_self_consistency";
  return out;
}

Output run_lemma4(const Options& o) {
  const auto config = make_config(o, {o.n});
  const auto report = lemma4_diagnostic(config, o.threshold, o.kappa_cap);
  Output out;
  out.csv_columns = "trial,class,admissible,sample";
  std::vector<double> bounds;
  for (std::size_t t = 0; t < report.class_of.size(); ++t) {
    const auto& cls = report.classes[report.class_of[t]];
    const auto& q = report.q_bound_over_a[t];
    if (q) bounds.push_back(*q);
    append_row(out.csv_rows, {std::to_string(t), std::to_string(report.class_of[t]),
                              cls.admissible ? "1" : "0", q ? real(*q) : std::string()});
  }
  add_stats(out.summary, bounds);
  out.summary["kappa"] = report.kappa;
  out.summary["coverage"] = report.coverage;
  out.summary["good_mass"] = report.good_mass;
  out.summary["classes"] = report.classes.size();
  return out;
}

}  // namespace

std::string tool_version() { return RWRS_VERSION; }

std::string format_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

std::string csv_header(const RunManifest& m) {
  return "# rwrs " + m.tool_version + "\n# subcommand: " + m.subcommand + "\n# config: " +
         m.config + "\n# config_digest: " + format_digest(m.config_digest) +
         "\n# seed: " + std::to_string(m.master_seed) + "\n";
}

std::optional<RunManifest> parse_manifest(std::istream& csv) {
  RunManifest m;
  std::map<std::string, std::string> fields;
  std::string line;
  while (csv.peek() == '#' && std::getline(csv, line)) {
    if (line.rfind("# rwrs ", 0) == 0) {
      m.tool_version = line.substr(7);
      continue;
    }
    const auto colon = line.find(": ");
    if (colon == std::string::npos || colon < 2) continue;
    fields[line.substr(2, colon - 2)] = line.substr(colon + 2);
  }
  for (const char* key : {"subcommand", "config", "config_digest", "seed"}) {
    if (!fields.count(key)) return std::nullopt;
  }
  if (m.tool_version.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    m.config_digest = std::stoull(fields["config_digest"], &used, 16);
    if (used != fields["config_digest"].size()) return std::nullopt;
    m.master_seed = std::stoull(fields["seed"], &used, 10);
    if (used != fields["seed"].size()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  m.subcommand = fields["subcommand"];
  m.config = fields["config"];
  return m;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Monte Carlo laboratory for random walks in random sceneries", "rwrs"};
  app.set_version_flag("--version", tool_version());
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--alpha", o.alpha, "Stability index in (1, 2]; 2 selects the lazy walk");
  app.add_option("--laziness", o.laziness, "Lazy walk: P(step = 0)");
  app.add_option("--zero-mass", o.zero_mass, "Pareto walk: P(step = 0)");
  app.add_option("--n", o.n, "Walk length")->check(CLI::PositiveNumber);
  app.add_option("--n-grid", o.n_grid, "edim: walk lengths")->delimiter(',');
  app.add_option("--trials", o.trials, "Trials")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--eps", o.eps, "Radii epsilon in (0, 1)")->delimiter(',');
  app.add_option("--probs", o.probs, "Scenery symbol probabilities")->delimiter(',');
  app.add_option("--interval", o.interval, "localtime: the set E as lo,hi[,lo,hi...]")
      ->delimiter(',')
      ->allow_extra_args(false);
  app.add_option("--steps", o.steps, "Reference walk length")->check(CLI::PositiveNumber);
  app.add_option("--ref-trials", o.ref_trials, "range: reference trials")->check(CLI::PositiveNumber);
  app.add_flag("--no-reference", o.no_reference, "range: skip the reference KS distance");
  app.add_option("--threshold", o.threshold, "lemma4: admissibility threshold (nats)");
  app.add_option("--kappa-cap", o.kappa_cap, "lemma4: largest dyadic order tried")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--instances", o.instances, "smalltest: randomized instances")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "CSV output path");
  app.add_option("--summary", o.summary, "JSON summary path (default: stdout)");

  const std::map<std::string, std::string> commands{
      {"range", "#V_n / a(n) per trial"},
      {"complexity", "log2 Phi_{n,eps} / a(n) per trial"},
      {"localtime", "Y_{E,n} per trial"},
      {"edim", "log2 Phi over a grid of n, with the E-dim slope"},
      {"reference", "Range reference samples (Brownian for alpha = 2)"},
      {"lemma4", "Dyadic signature classes and the Q bound on their events"},
      {"smalltest", "Exhaustive small-instance oracle suite"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rwrs: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  o.subcommand = app.get_subcommands().front()->get_name();

  RunManifest manifest;
  manifest.tool_version = tool_version();
  manifest.subcommand = o.subcommand;
  manifest.config = canonical_config(o);
  manifest.config_digest = fnv1a64(manifest.config);
  manifest.master_seed = o.seed;
  if (!o.out.empty()) manifest.outputs.push_back(o.out);
  if (!o.summary.empty()) manifest.outputs.push_back(o.summary);

  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    Output result;
    if (o.subcommand == "smalltest") {
      const auto report = run_small_suite(o.seed, o.instances);
      for (const auto& f : report.failures) err << "smalltest: " << f << '\n';
      result.csv_columns = "check,failure";
      for (std::size_t i = 0; i < report.failures.size(); ++i) {
        append_row(result.csv_rows, {std::to_string(i), "\"" + report.failures[i] + "\""});
      }
      result.summary["n_samples"] = report.instances;
      result.summary["checks"] = report.checks;
      result.summary["failures"] = report.failures.size();
      result.summary["passed"] = report.passed();
      status = report.passed() ? kOk : kFailed;
    } else if (o.subcommand == "range") {
      result = run_range(o);
    } else if (o.subcommand == "complexity") {
      result = run_complexity(o);
    } else if (o.subcommand == "localtime") {
      result = run_localtime(o);
    } else if (o.subcommand == "edim") {
      result = run_edim(o);
    } else if (o.subcommand == "reference") {
      result = run_reference(o);
    } else {
      result = run_lemma4(o);
    }
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!o.out.empty()) {
      write_file(o.out, csv_header(manifest) + result.csv_columns + "\n" + result.csv_rows);
    }
    ordered_json summary = result.summary;
    summary["config_digest"] = format_digest(manifest.config_digest);
    summary["seed"] = manifest.master_seed;
    summary["config"] = manifest.config;
    summary["manifest"] = {{"tool_version", manifest.tool_version},
                           {"subcommand", manifest.subcommand},
                           {"outputs", manifest.outputs},
                           {"wall_clock_seconds", manifest.wall_clock_seconds}};
    const std::string text = summary.dump(2) + "\n";
    if (o.summary.empty()) {
      out << text;
    } else {
      write_file(o.summary, text);
    }
  } catch (const UsageError& e) {
    err << "rwrs: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "rwrs: " << e.what() << '\n';
    return kIo;
  } catch (const std::domain_error& e) {
    err << "rwrs: infeasible configuration: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}

}  // namespace rwrs::cli
