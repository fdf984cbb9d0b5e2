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

// Integer jump laws in the domain of attraction of the symmetric
// alpha-stable law with characteristic function exp(-|t|^alpha / alpha),
// together with their normalizing sequences a(n) and the integrated
// companion abar(n) = int_0^n min(1/a(t), 1) dt.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "rwrs/seeding.hpp"

namespace rwrs {

enum class JumpFamily {
  /// pmf(0) = laziness, pmf(+-1) = (1 - laziness) / 2; alpha = 2.
  lazy_nearest_neighbour,
  /// pmf(0) = zero_mass, pmf(k) = c |k|^{-1-alpha}; 1 < alpha < 2.
  pareto,
  /// Deterministic +1 step. Only constructible through rwrs::testing.
  unit_step,
};

namespace detail {
struct ParetoTables;
}

class JumpLaw;

namespace testing {
JumpLaw make_unit_step_jump();
}

/// Immutable description of a symmetric integer jump distribution.
///
/// Copies share their sampling tables, so a law can be handed to any number
/// of worker threads.
class JumpLaw {
 public:
  JumpFamily family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }
  double pmf(std::int64_t k) const noexcept;

  /// Finite iff alpha == 2.
  std::optional<double> variance() const noexcept;
  /// C with P(|xi| > x) ~ C x^{-alpha}; present iff alpha < 2.
  std::optional<double> tail_constant() const noexcept;
  /// pmf(0) > 0 and pmf(1) > 0.
  bool aperiodic() const noexcept { return aperiodic_; }

  double laziness() const noexcept { return laziness_; }
  double zero_mass() const noexcept { return zero_mass_; }
  /// The constant c in pmf(k) = c |k|^{-1-alpha} (pareto only).
  double pareto_constant() const noexcept { return pareto_c_; }

  /// P(|xi| > x) for real x >= 0.
  double survival(double x) const;

  /// 1 - Re E exp(i u xi), for u in R.
  double one_minus_re_cf(double u) const;

  const detail::ParetoTables* pareto_tables() const noexcept {
    return tables_.get();
  }
  /// Lazy family: a step is 0 iff (bits >> 1) < lazy_threshold().
  std::uint64_t lazy_threshold() const noexcept { return lazy_threshold_; }

 private:
  JumpLaw() = default;

  JumpFamily family_ = JumpFamily::lazy_nearest_neighbour;
  double alpha_ = 2.0;
  double laziness_ = 0.0;
  double zero_mass_ = 0.0;
  double pareto_c_ = 0.0;
  bool aperiodic_ = false;
  std::uint64_t lazy_threshold_ = 0;
  std::shared_ptr<const detail::ParetoTables> tables_;

  friend JumpLaw make_lazy_gaussian_jump(double laziness);
  friend JumpLaw make_pareto_jump(double alpha, double zero_mass);
  friend JumpLaw testing::make_unit_step_jump();
};

/// Lazy nearest-neighbour walk. Throws std::domain_error unless
/// 0 < laziness < 1.
JumpLaw make_lazy_gaussian_jump(double laziness);

/// Symmetric discrete power law. Throws std::domain_error unless
/// 1 < alpha < 2 and 0 < zero_mass < 1.
JumpLaw make_pareto_jump(double alpha, double zero_mass);

/// One draw from the law (defined inline below; the walk loops call it per
/// step).
inline std::int64_t sample_jump(const JumpLaw& law, Rng& rng);

/// a(n). For alpha = 2 this is sigma * sqrt(n); for alpha < 2 it is the root
/// of n (1 - Re phi(1/a)) = 1/alpha. Throws std::domain_error for n < 1.
double normalizing_constant(const JumpLaw& law, std::int64_t n);

/// a(t) for real t > 0 (same conventions as normalizing_constant).
double normalizing_constant_at(const JumpLaw& law, double t);

/// abar(n) = int_0^n min(1/a(t), 1) dt by trapezoidal quadrature on a
/// geometric grid.
double integrated_normalizer(const JumpLaw& law, std::int64_t n);

/// The asymptotic form alpha/(alpha-1) * n / a(n), exposed as a cross-check.
double integrated_normalizer_asymptotic(const JumpLaw& law, std::int64_t n);

namespace detail {

/// Vose alias table; one 64-bit draw per sample.
class AliasTable {
  __extension__ using Wide = unsigned __int128;

 public:
  AliasTable() = default;
  explicit AliasTable(const double* weights, std::size_t size);

  std::uint32_t sample(std::uint64_t bits) const noexcept {
    const auto wide = static_cast<Wide>(bits) * size_;
    const auto column = static_cast<std::uint32_t>(wide >> 64);
    const auto fraction = static_cast<std::uint64_t>(wide);
    return fraction < threshold_[column] ? column : alias_[column];
  }
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_ = 0;
  std::unique_ptr<std::uint64_t[]> threshold_;
  std::unique_ptr<std::uint32_t[]> alias_;
};

/// Two-level exact sampler for |xi|: a small hot table for magnitudes below
/// kNearCut, a large one up to kBodyCut, and a rejection sampler beyond.
struct ParetoTables {
  static constexpr std::int64_t kNearCut = 256;
  static constexpr std::int64_t kBodyCut = std::int64_t{1} << 16;

  // Signed outcomes -(kNearCut-1)..(kNearCut-1), then one slot for "far".
  AliasTable near;
  // Magnitudes kNearCut..kBodyCut, then one slot for "tail".
  AliasTable far;
  double alpha = 1.5;
  double tail_accept_scale = 1.0;
  // Series coefficients for 1 - Re phi(u): see one_minus_re_cf.
  double stable_coefficient = 0.0;
  double series[40] = {};
};

/// Draw for |xi| >= kNearCut, sign included.
std::int64_t sample_pareto_far(const ParetoTables& tables, Rng& rng);

}  // namespace detail

inline std::int64_t sample_jump(const JumpLaw& law, Rng& rng) {
  switch (law.family()) {
    case JumpFamily::lazy_nearest_neighbour: {
      const std::uint64_t bits = rng();
      const auto moves = static_cast<std::int64_t>((bits >> 1) >= law.lazy_threshold());
      return moves * (static_cast<std::int64_t>(bits & 1U) * 2 - 1);
    }
    case JumpFamily::pareto: {
      const auto& tables = *law.pareto_tables();
      const std::uint32_t slot = tables.near.sample(rng());
      constexpr auto kOffset = detail::ParetoTables::kNearCut - 1;
      if (slot < 2 * kOffset + 1) return static_cast<std::int64_t>(slot) - kOffset;
      return detail::sample_pareto_far(tables, rng);
    }
    case JumpFamily::unit_step:
      return 1;
  }
  return 0;
}
}  // namespace rwrs
