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

#include "rwrs/stable_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

namespace rwrs {
namespace {

using detail::ParetoTables;

// sum_{k >= m} k^{-s} for s > 1 and m >= 1.
double zeta_tail(double s, std::int64_t m) {
  constexpr std::int64_t kDirect = 64;
  if (m < 1) m = 1;
  double direct = 0.0;
  std::int64_t start = m;
  if (m < kDirect) {
    for (std::int64_t k = kDirect - 1; k >= m; --k) {
      direct += std::pow(static_cast<double>(k), -s);
    }
    start = kDirect;
  }
  // Euler-Maclaurin from `start`; the first omitted term is O(start^{-s-5}).
  const double x = static_cast<double>(start);
  const double em = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s) +
                    s * std::pow(x, -s - 1.0) / 12.0 -
                    s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0) / 720.0;
  return direct + em;
}

double partial_zeta(double s, std::int64_t upto) {
  double sum = 0.0;
  for (std::int64_t k = upto; k >= 1; --k) {
    sum += std::pow(static_cast<double>(k), -s);
  }
  return sum;
}

// 1 - Re phi(u) for the Pareto law, via the expansion of Li_s(e^{iu}) around
// u = 0 (s = 1 + alpha), which converges for |u| < 2 pi.
double pareto_one_minus_re_cf(const ParetoTables& t, double c, double u) {
  u = std::remainder(u, 2.0 * std::numbers::pi);
  u = std::abs(u);
  if (u == 0.0) return 0.0;
  const double u2 = u * u;
  double power = u2;
  double series = 0.0;
  for (double coefficient : t.series) {
    const double term = coefficient * power;
    series += term;
    if (std::abs(term) < 1e-19 * std::abs(series)) break;
    power *= u2;
  }
  return 2.0 * c * (t.stable_coefficient * std::pow(u, t.alpha) + series);
}

double lazy_scale(const JumpLaw& law) { return std::sqrt(1.0 - law.laziness()); }

// Point where a(t) = 1; min(1/a, 1) equals 1 on [0, t_star].
double unit_scale_time(const JumpLaw& law) {
  switch (law.family()) {
    case JumpFamily::lazy_nearest_neighbour:
      return 1.0 / (1.0 - law.laziness());
    case JumpFamily::pareto:
      return 1.0 / (law.alpha() * law.one_minus_re_cf(1.0));
    case JumpFamily::unit_step:
      return 1.0;
  }
  return 1.0;
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::domain_error(std::string(what) + " must be finite");
  }
}

}  // namespace

namespace detail {

AliasTable::AliasTable(const double* weights, std::size_t size)
    : size_(size),
      threshold_(new std::uint64_t[size]),
      alias_(new std::uint32_t[size]) {
  double total = 0.0;
  for (std::size_t i = 0; i < size; ++i) total += weights[i];
  std::vector<double> scaled(size);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t i = 0; i < size; ++i) {
    scaled[i] = weights[i] * static_cast<double>(size) / total;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<double> keep(size, 1.0);
  for (std::size_t i = 0; i < size; ++i) alias_[i] = static_cast<std::uint32_t>(i);
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    keep[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto i : small) keep[i] = 1.0;
  for (auto i : large) keep[i] = 1.0;
  for (std::size_t i = 0; i < size; ++i) {
    threshold_[i] = keep[i] >= 1.0
                        ? std::numeric_limits<std::uint64_t>::max()
                        : static_cast<std::uint64_t>(std::ldexp(keep[i], 64));
  }
}

std::int64_t sample_pareto_far(const ParetoTables& tables, Rng& rng) {
  constexpr std::int64_t kFarSlots = ParetoTables::kBodyCut - ParetoTables::kNearCut + 1;
  const std::uint32_t slot = tables.far.sample(rng());
  std::int64_t magnitude = 0;
  if (slot < kFarSlots) {
    magnitude = ParetoTables::kNearCut + static_cast<std::int64_t>(slot);
  } else {
    // Continuous envelope density ~ y^{-1-alpha} on [K+1, inf), floored to
    // the lattice and thinned to the exact discrete tail.
    constexpr double kFirst = static_cast<double>(ParetoTables::kBodyCut + 1);
    constexpr double kCap = 0x1.0p62;
    const double alpha = tables.alpha;
    for (;;) {
      const double y = kFirst * std::pow(to_open_unit(rng()), -1.0 / alpha);
      if (!(y < kCap)) continue;
      const double k = std::floor(y);
      const double cell = -std::expm1(-alpha * std::log1p(1.0 / k));
      const double accept = tables.tail_accept_scale / (k * cell);
      if (to_unit(rng()) < accept) {
        magnitude = static_cast<std::int64_t>(k);
        break;
      }
    }
  }
  return (rng() & 1U) != 0 ? magnitude : -magnitude;
}

}  // namespace detail

double JumpLaw::pmf(std::int64_t k) const noexcept {
  switch (family_) {
    case JumpFamily::lazy_nearest_neighbour:
      if (k == 0) return laziness_;
      if (k == 1 || k == -1) return 0.5 * (1.0 - laziness_);
      return 0.0;
    case JumpFamily::pareto:
      if (k == 0) return zero_mass_;
      return pareto_c_ * std::pow(std::abs(static_cast<double>(k)), -1.0 - alpha_);
    case JumpFamily::unit_step:
      return k == 1 ? 1.0 : 0.0;
  }
  return 0.0;
}

std::optional<double> JumpLaw::variance() const noexcept {
  switch (family_) {
    case JumpFamily::lazy_nearest_neighbour:
      return 1.0 - laziness_;
    case JumpFamily::unit_step:
      return 0.0;
    case JumpFamily::pareto:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> JumpLaw::tail_constant() const noexcept {
  if (family_ != JumpFamily::pareto) return std::nullopt;
  return 2.0 * pareto_c_ / alpha_;
}

double JumpLaw::survival(double x) const {
  if (x < 0.0) return 1.0;
  switch (family_) {
    case JumpFamily::lazy_nearest_neighbour:
      return x < 1.0 ? 1.0 - laziness_ : 0.0;
    case JumpFamily::unit_step:
      return x < 1.0 ? 1.0 : 0.0;
    case JumpFamily::pareto: {
      if (x < 1.0) return 1.0 - zero_mass_;
      const double first = std::floor(x) + 1.0;
      if (first > 1e15) {
        return 2.0 * pareto_c_ * std::pow(first, -alpha_) / alpha_;
      }
      return 2.0 * pareto_c_ * zeta_tail(1.0 + alpha_, static_cast<std::int64_t>(first));
    }
  }
  return 0.0;
}

double JumpLaw::one_minus_re_cf(double u) const {
  switch (family_) {
    case JumpFamily::lazy_nearest_neighbour: {
      const double s = std::sin(0.5 * u);
      return 2.0 * (1.0 - laziness_) * s * s;
    }
    case JumpFamily::unit_step: {
      const double s = std::sin(0.5 * u);
      return 2.0 * s * s;
    }
    case JumpFamily::pareto:
      return pareto_one_minus_re_cf(*tables_, pareto_c_, u);
  }
  return 0.0;
}

JumpLaw make_lazy_gaussian_jump(double laziness) {
  require_finite(laziness, "laziness");
  if (!(laziness > 0.0 && laziness < 1.0)) {
    throw std::domain_error("laziness must lie in (0, 1); got " + std::to_string(laziness));
  }
  JumpLaw law;
  law.family_ = JumpFamily::lazy_nearest_neighbour;
  law.alpha_ = 2.0;
  law.laziness_ = laziness;
  law.aperiodic_ = true;
  law.lazy_threshold_ = static_cast<std::uint64_t>(std::ldexp(laziness, 63));
  return law;
}

JumpLaw make_pareto_jump(double alpha, double zero_mass) {
  require_finite(alpha, "alpha");
  require_finite(zero_mass, "zero_mass");
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::domain_error("pareto alpha must lie in (1, 2); got " + std::to_string(alpha));
  }
  if (!(zero_mass > 0.0 && zero_mass < 1.0)) {
    throw std::domain_error("zero_mass must lie in (0, 1); got " + std::to_string(zero_mass));
  }
  const double s = 1.0 + alpha;
  const double zeta = std::riemann_zeta(s);
  const double c = (1.0 - zero_mass) / (2.0 * zeta);

  auto tables = std::make_shared<ParetoTables>();
  tables->alpha = alpha;

  constexpr std::int64_t kNear = ParetoTables::kNearCut;
  constexpr std::int64_t kBody = ParetoTables::kBodyCut;
  {
    std::vector<double> weights(2 * (kNear - 1) + 2);
    for (std::int64_t k = -(kNear - 1); k <= kNear - 1; ++k) {
      weights[static_cast<std::size_t>(k + kNear - 1)] =
          k == 0 ? zero_mass : c * std::pow(std::abs(static_cast<double>(k)), -s);
    }
    weights.back() = 2.0 * c * (zeta - partial_zeta(s, kNear - 1));
    tables->near = detail::AliasTable(weights.data(), weights.size());
  }
  {
    std::vector<double> weights(static_cast<std::size_t>(kBody - kNear + 2));
    for (std::int64_t k = kNear; k <= kBody; ++k) {
      weights[static_cast<std::size_t>(k - kNear)] =
          2.0 * c * std::pow(static_cast<double>(k), -s);
    }
    weights.back() = 2.0 * c * (zeta - partial_zeta(s, kBody));
    tables->far = detail::AliasTable(weights.data(), weights.size());
  }
  tables->tail_accept_scale =
      alpha / std::pow(1.0 + 1.0 / static_cast<double>(kBody + 1), 1.0 + alpha);

  const double pi = std::numbers::pi;
  tables->stable_coefficient = pi / (2.0 * std::tgamma(1.0 + alpha) * std::sin(0.5 * pi * alpha));
  double factorial = 1.0;
  for (int j = 1; j <= static_cast<int>(std::size(tables->series)); ++j) {
    factorial *= static_cast<double>(2 * j - 1) * static_cast<double>(2 * j);
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // -(-1)^j
    tables->series[j - 1] = sign * std::riemann_zeta(s - 2.0 * j) / factorial;
  }

  JumpLaw law;
  law.family_ = JumpFamily::pareto;
  law.alpha_ = alpha;
  law.zero_mass_ = zero_mass;
  law.pareto_c_ = c;
  law.aperiodic_ = true;
  law.tables_ = std::move(tables);
  return law;
}

double normalizing_constant_at(const JumpLaw& law, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::domain_error("normalizing constant needs t > 0");
  }
  switch (law.family()) {
    case JumpFamily::lazy_nearest_neighbour:
      return lazy_scale(law) * std::sqrt(t);
    case JumpFamily::unit_step:
      return t;
    case JumpFamily::pareto:
      break;
  }
  const double target = 1.0 / law.alpha();
  const auto residual = [&](double u) { return t * law.one_minus_re_cf(u) - target; };
  const double pi = std::numbers::pi;
  if (residual(pi) < 0.0) {
    throw std::logic_error("normalizing constant not bracketable for t = " + std::to_string(t));
  }
  // Leading-order guess from 1 - Re phi(u) ~ 2c C u^alpha, then widen.
  const auto& tables = *law.pareto_tables();
  double guess = std::pow(target / (t * 2.0 * law.pareto_constant() * tables.stable_coefficient),
                          1.0 / law.alpha());
  double lo = std::min(guess, pi);
  double hi = lo;
  while (lo > 1e-300 && residual(lo) > 0.0) lo *= 0.5;
  while (hi < pi && residual(hi) < 0.0) hi = std::min(pi, 2.0 * hi);
  if (residual(lo) > 0.0 || residual(hi) < 0.0) {
    throw std::logic_error("normalizing constant bracketing failed");
  }
  if (residual(hi) == 0.0) return 1.0 / hi;
  std::uintmax_t iterations = 200;
  const auto root = boost::math::tools::toms748_solve(
      residual, lo, hi, boost::math::tools::eps_tolerance<double>(52), iterations);
  return 2.0 / (root.first + root.second);
}

double normalizing_constant(const JumpLaw& law, std::int64_t n) {
  if (n < 1) throw std::domain_error("normalizing constant needs n >= 1");
  return normalizing_constant_at(law, static_cast<double>(n));
}

double integrated_normalizer(const JumpLaw& law, std::int64_t n) {
  if (n < 1) throw std::domain_error("integrated normalizer needs n >= 1");
  const double upper = static_cast<double>(n);
  const double t_star = unit_scale_time(law);
  if (upper <= t_star) return upper;

  constexpr int kNodes = 10000;
  const double log_ratio = std::log(upper / t_star);
  double sum = 0.0;
  double prev_t = t_star;
  double prev_f = 1.0 / normalizing_constant_at(law, t_star);
  for (int i = 1; i < kNodes; ++i) {
    const double t = i + 1 == kNodes ? upper : t_star * std::exp(log_ratio * i / (kNodes - 1));
    const double f = std::min(1.0, 1.0 / normalizing_constant_at(law, t));
    sum += 0.5 * (f + prev_f) * (t - prev_t);
    prev_t = t;
    prev_f = f;
  }
  return t_star + sum;
}

double integrated_normalizer_asymptotic(const JumpLaw& law, std::int64_t n) {
  if (n < 1) throw std::domain_error("integrated normalizer needs n >= 1");
  if (law.family() == JumpFamily::unit_step) {
    return 1.0 + std::log(static_cast<double>(n));
  }
  const double alpha = law.alpha();
  return alpha / (alpha - 1.0) * static_cast<double>(n) / normalizing_constant(law, n);
}

}  // namespace rwrs
