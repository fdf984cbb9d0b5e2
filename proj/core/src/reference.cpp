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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rwrs/experiments.hpp"

namespace rwrs {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples, Provenance provenance)
    : samples_(std::move(samples)), provenance_(provenance) {
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::cdf(double x) const noexcept {
  if (samples_.empty()) return 0.0;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDistribution::mean() const {
  if (samples_.empty()) throw std::domain_error("mean of an empty sample");
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

double EmpiricalDistribution::sd() const {
  if (samples_.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double x : samples_) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(samples_.size() - 1));
}

double EmpiricalDistribution::median() const { return quantile(0.5); }

double EmpiricalDistribution::quantile(double q) const {
  if (samples_.empty()) throw std::domain_error("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile level must lie in [0, 1]");
  const double h = q * static_cast<double>(samples_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, samples_.size() - 1);
  return samples_[lo] + (h - static_cast<double>(lo)) * (samples_[hi] - samples_[lo]);
}

EmpiricalDistribution EmpiricalDistribution::merge(const EmpiricalDistribution& a,
                                                   const EmpiricalDistribution& b) {
  EmpiricalDistribution out;
  out.provenance_ = a.provenance_;
  out.samples_.resize(a.size() + b.size());
  std::merge(a.samples_.begin(), a.samples_.end(), b.samples_.begin(), b.samples_.end(),
             out.samples_.begin());
  return out;
}

double ks_statistic(const EmpiricalDistribution& d1, const EmpiricalDistribution& d2) {
  if (d1.empty() || d2.empty()) throw std::domain_error("KS needs two nonempty samples");
  const auto x = d1.samples();
  const auto y = d2.samples();
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return best;
}

double ks_statistic(const EmpiricalDistribution& d, const std::function<double(double)>& cdf) {
  if (d.empty()) throw std::domain_error("KS needs a nonempty sample");
  const auto x = d.samples();
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double f = cdf(x[i]);
    best = std::max({best, static_cast<double>(j) / n - f, f - static_cast<double>(i) / n});
    i = j;
  }
  return best;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// 1 - F(x) for large x from the Bergstrom expansion of the stable density.
double stable_upper_tail(double alpha, double x) {
  double total = 0.0;
  double scale = 1.0;  // (1/alpha)^k / k!
  for (int k = 1; k <= 4; ++k) {
    scale *= 1.0 / (alpha * k);
    const double term = std::tgamma(k * alpha) * scale *
                        std::sin(k * std::numbers::pi * alpha / 2.0) * std::pow(x, -k * alpha);
    total += (k % 2 == 1) ? term : -term;
  }
  return total / std::numbers::pi;
}

}  // namespace

double stable_cdf(double alpha, double x) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw std::domain_error("alpha must lie in (1, 2]");
  if (alpha == 2.0) return normal_cdf(x);
  if (std::isnan(x)) throw std::domain_error("stable_cdf of NaN");
  if (x < 0.0) return 1.0 - stable_cdf(alpha, -x);
  if (x == 0.0) return 0.5;
  constexpr double kTailStart = 40.0;
  if (x > kTailStart) return 1.0 - stable_upper_tail(alpha, x);
  // Gil-Pelaez: F(x) = 1/2 + (1/pi) int_0^inf sin(t x) / t exp(-t^alpha/alpha) dt.
  const double t_max = std::pow(45.0 * alpha, 1.0 / alpha);
  const auto integrand = [&](double t) {
    if (t == 0.0) return x;
    return std::sin(t * x) / t * std::exp(-std::pow(t, alpha) / alpha);
  };
  const double piece = std::min(1.0, std::numbers::pi / x);
  const int pieces = static_cast<int>(std::ceil(t_max / piece));
  double integral = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double lo = t_max * p / pieces;
    const double hi = t_max * (p + 1) / pieces;
    integral += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 0, 0);
  }
  return std::clamp(0.5 + integral / std::numbers::pi, 0.0, 1.0);
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  const auto workers =
      static_cast<std::int64_t>(std::min<std::int64_t>(worker_count(), count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto run = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers - 1));
  for (std::int64_t w = 1; w < workers; ++w) threads.emplace_back(run);
  run();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> brownian_range_samples(std::int64_t steps, std::int64_t trials,
                                           std::uint64_t seed) {
  if (steps < 10000) throw std::domain_error("the Brownian proxy needs at least 10^4 steps");
  if (trials < 1) throw std::domain_error("trials must be positive");
  std::vector<double> samples(static_cast<std::size_t>(trials));
  const double scale = 1.0 / std::sqrt(static_cast<double>(steps));
  parallel_for(trials, [&](std::int64_t t) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(t), Stream::reference));
    std::int64_t s = 0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (std::int64_t done = 0; done < steps;) {
      std::uint64_t bits = rng();
      const std::int64_t batch = std::min<std::int64_t>(64, steps - done);
      for (std::int64_t b = 0; b < batch; ++b, bits >>= 1) {
        s += (bits & 1U) != 0 ? 1 : -1;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      done += batch;
    }
    samples[static_cast<std::size_t>(t)] = static_cast<double>(hi - lo) * scale;
  });
  return samples;
}

EmpiricalDistribution brownian_range_reference(std::int64_t steps, std::int64_t trials,
                                               std::uint64_t seed) {
  return EmpiricalDistribution(brownian_range_samples(steps, trials, seed), {0, seed});
}

std::vector<double> stable_range_samples(double alpha, std::int64_t steps, std::int64_t trials,
                                         std::uint64_t seed) {
  if (trials < 1) throw std::domain_error("trials must be positive");
  const JumpLaw law = make_pareto_jump(alpha, 0.2);
  const double a = normalizing_constant(law, steps);
  std::vector<double> samples(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t t) {
    const auto field =
        simulate_occupation(law, steps, stream_seed(seed, static_cast<std::uint64_t>(t), Stream::reference));
    samples[static_cast<std::size_t>(t)] = static_cast<double>(field.range_size()) / a;
  });
  return samples;
}

EmpiricalDistribution stable_range_reference(double alpha, std::int64_t steps,
                                             std::int64_t trials, std::uint64_t seed) {
  return EmpiricalDistribution(stable_range_samples(alpha, steps, trials, seed), {0, seed});
}

}  // namespace rwrs
