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
#include <bit>
#include <cmath>
#include <sstream>

#include "rwrs/experiments.hpp"

namespace rwrs {
namespace {

constexpr std::int64_t kMaxWords = std::int64_t{1} << 7;

std::int64_t power(std::int64_t base, std::int64_t exponent) {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * to_unit(rng());
}

std::vector<double> random_probs(Rng& rng, std::size_t alphabet) {
  if (uniform_int(rng, 0, 3) == 0) return std::vector<double>(alphabet, 1.0 / static_cast<double>(alphabet));
  std::vector<double> w(alphabet);
  double total = 0.0;
  for (double& x : w) total += (x = uniform_real(rng, 0.05, 1.0));
  for (double& x : w) x /= total;
  return w;
}

// Either a field from a short real walk or synthetic visit counts, with at
// most max_sites sites.
OccupationField random_field(Rng& rng, std::int64_t max_sites) {
  if (uniform_int(rng, 0, 1) == 0) {
    const JumpLaw law = uniform_int(rng, 0, 1) == 0 ? make_lazy_gaussian_jump(uniform_real(rng, 0.1, 0.9))
                                                    : make_pareto_jump(1.5, 0.3);
    for (;;) {
      auto field = simulate_occupation(law, uniform_int(rng, 1, 3 * max_sites), rng());
      if (field.range_size() <= max_sites) return field;
    }
  }
  OccupationField field;
  const std::int64_t m = uniform_int(rng, 1, max_sites);
  for (std::int64_t k = 0; k < m; ++k) {
    field.sites.push_back(k);
    field.counts.push_back(uniform_int(rng, 1, 4));
    field.n += field.counts.back();
  }
  return field;
}

// Fewest words with mass > 1 - eps, by trying every subset.
std::int64_t phi_by_subsets(std::span<const double> masses, double epsilon) {
  const auto w = masses.size();
  std::int64_t best = static_cast<std::int64_t>(w);
  for (std::uint32_t subset = 0; subset < (1U << w); ++subset) {
    const int size = std::popcount(subset);
    if (size >= best) continue;
    double mass = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      if ((subset >> i) & 1U) mass += masses[i];
    }
    if (mass > 1.0 - epsilon) best = size;
  }
  return best;
}

class Recorder {
 public:
  explicit Recorder(SmallSuiteReport& report) : report_(report) {}

  template <class Describe>
  void check(bool ok, const char* what, Describe describe) {
    ++report_.checks;
    if (ok) return;
    std::ostringstream out;
    out << what << ": ";
    describe(out);
    report_.failures.push_back(out.str());
  }

 private:
  SmallSuiteReport& report_;
};

void field_instance(Rng& rng, Recorder& rec) {
  const auto alphabet = static_cast<std::size_t>(uniform_int(rng, 2, 4));
  std::int64_t max_sites = 1;
  while (power(static_cast<std::int64_t>(alphabet), max_sites + 1) <= kMaxWords) ++max_sites;
  const OccupationField field = random_field(rng, max_sites);
  const SceneryModel model = make_bernoulli_scenery(random_probs(rng, alphabet));
  const double eps = uniform_real(rng, 0.01, 0.7);
  const auto tag = [&](std::ostream& out) {
    out << "N=" << alphabet << " m=" << field.range_size() << " n=" << field.n
        << " eps=" << eps;
  };

  const std::int64_t phi = phi_exact_small(model, field, eps);
  const double log2_phi = phi_estimate(model, field, eps);
  rec.check(std::llround(std::exp2(log2_phi)) == phi, "phi classes vs enumeration", [&](auto& out) {
    tag(out);
    out << " classes=" << std::exp2(log2_phi) << " exact=" << phi;
  });

  const auto words = all_words(model, field);
  if (words.size() <= 16) {
    std::vector<double> masses;
    for (const auto& w : words) masses.push_back(word_probability(model, w));
    const std::int64_t best = phi_by_subsets(masses, eps);
    rec.check(best == phi, "phi optimality vs subsets", [&](auto& out) {
      tag(out);
      out << " subsets=" << best << " phi=" << phi;
    });
  }

  const std::int64_t k = k_exact_small(model, field, eps);
  const std::int64_t q = q_exact_small(field, words, eps);
  rec.check(k <= phi && phi <= k * q, "phi/q <= k <= phi", [&](auto& out) {
    tag(out);
    out << " phi=" << phi << " q=" << q << " k=" << k;
  });

  const auto i = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(alphabet) - 1));
  auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(alphabet) - 2));
  if (j >= i) ++j;
  const std::int64_t k_coarse = k_exact_small(merge_symbols(model, i, j), field, eps);
  rec.check(k_coarse <= k, "merge monotonicity", [&](auto& out) {
    tag(out);
    out << " merged " << i << "," << j << " k=" << k << " k_coarse=" << k_coarse;
  });
}

void block_instance(Rng& rng, Recorder& rec) {
  const SceneryModel model = make_bernoulli_scenery(random_probs(rng, 2));
  const std::int64_t n = uniform_int(rng, 3, 9);
  const double eps = uniform_real(rng, 0.02, 0.45);
  const auto tag = [&](std::ostream& out) { out << "n=" << n << " eps=" << eps; };
  const std::int64_t k_fine = k_exact_block_refinement(model, n, 1, eps / 2.0);
  const std::int64_t k_blocks = k_exact_block_refinement(model, n, 2, eps / 2.0);
  rec.check(k_fine <= k_blocks, "block refinement upper", [&](auto& out) {
    tag(out);
    out << " K(P,eps/2)=" << k_fine << " K(P_2,eps/2)=" << k_blocks;
  });
  const double wide = 2.0 * eps + 4.0 / static_cast<double>(n);
  if (wide < 1.0) {
    const std::int64_t k_wide = k_exact_block_refinement(model, n, 2, wide);
    rec.check(k_wide <= k_fine, "block refinement lower", [&](auto& out) {
      tag(out);
      out << " K(P_2," << wide << ")=" << k_wide << " K(P,eps/2)=" << k_fine;
    });
  }
}

}  // namespace

SmallSuiteReport run_small_suite(std::uint64_t seed, std::int64_t instances) {
  SmallSuiteReport report;
  Recorder rec(report);
  for (std::int64_t t = 0; t < instances; ++t) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(t), Stream::reference));
    // One instance in four exercises the block refinement.
    if (t % 4 == 3) {
      block_instance(rng, rec);
    } else {
      field_instance(rng, rec);
    }
    ++report.instances;
  }
  return report;
}

}  // namespace rwrs
