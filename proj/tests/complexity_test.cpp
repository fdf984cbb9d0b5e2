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


#include "rwrs/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "testing_laws.hpp"

namespace rwrs {
namespace {

OccupationField field_of(std::vector<std::int64_t> counts) {
  OccupationField f;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    f.sites.push_back(static_cast<std::int64_t>(i));
    f.counts.push_back(counts[i]);
    f.n += counts[i];
  }
  return f;
}

TEST(WordDistance, HandValues) {
  const OccupationField f = field_of({2, 1});
  const SceneryWord a{{0, 1}, {0, 0}};
  const SceneryWord b{{0, 1}, {1, 0}};
  const SceneryWord c{{0, 1}, {1, 1}};
  EXPECT_EQ(rwrs_word_distance(f, a, a), 0.0);
  EXPECT_DOUBLE_EQ(rwrs_word_distance(f, a, b), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(rwrs_word_distance(f, a, c), 1.0);
  const SceneryWord off{{0, 2}, {0, 0}};
  EXPECT_THROW(rwrs_word_distance(f, a, off), std::domain_error);
}

TEST(Phi, UniformHalf) {
  // Mass must strictly exceed 1/2, so one word past half of them.
  const SceneryModel uniform = make_bernoulli_scenery({0.5, 0.5});
  for (std::int64_t m = 1; m <= 12; ++m) {
    const OccupationField f = field_of(std::vector<std::int64_t>(static_cast<std::size_t>(m), 1));
    EXPECT_EQ(phi_exact_small(uniform, f, 0.5), (std::int64_t{1} << (m - 1)) + 1);
    EXPECT_NEAR(phi_estimate(uniform, f, 0.5), std::log2(std::exp2(m - 1.0) + 1.0), 1e-12);
  }
}

TEST(Phi, HandEnumerations) {
  EXPECT_EQ(phi_exact_small(make_bernoulli_scenery({0.5, 0.5}), field_of({1, 1}), 0.3), 3);
  // .512, .128 x3, ...: cumulative .896 > .8 after four words.
  EXPECT_EQ(phi_exact_small(make_bernoulli_scenery({0.8, 0.2}), field_of({1, 1, 1}), 0.2), 4);
}

TEST(Phi, ClassesMatchEnumeration) {
  const SceneryModel skew = make_bernoulli_scenery({0.8, 0.2});
  const OccupationField f = field_of(std::vector<std::int64_t>(10, 3));
  EXPECT_NEAR(phi_estimate(skew, f, 0.1), std::log2(static_cast<double>(phi_exact_small(skew, f, 0.1))),
              1e-12);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t alphabet = 2 + rng() % 3;
    std::vector<double> p(alphabet);
    double total = 0.0;
    for (double& x : p) total += (x = rng() % 4 == 0 ? 1.0 : 0.05 + to_unit(rng()));
    for (double& x : p) x /= total;
    const SceneryModel model = make_bernoulli_scenery(p);
    std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 8);
    while (std::pow(static_cast<double>(alphabet), static_cast<double>(m)) > 4096) --m;
    const OccupationField field = field_of(std::vector<std::int64_t>(static_cast<std::size_t>(m), 1));
    const double eps = 0.005 + 0.99 * to_unit(rng());
    EXPECT_NEAR(std::exp2(phi_estimate(model, field, eps)),
                static_cast<double>(phi_exact_small(model, field, eps)), 1e-6)
        << "alphabet " << alphabet << " m " << m << " eps " << eps;
  }
}

TEST(Phi, SmallEpsilonCoversEverything) {
  const SceneryModel model = make_bernoulli_scenery({0.6, 0.3, 0.1});
  const OccupationField f = field_of({1, 1, 1, 1, 1});
  EXPECT_NEAR(phi_estimate(model, f, 1e-9), 5.0 * std::log2(3.0), 1e-12);
}

TEST(Phi, MonotoneInEpsilon) {
  const SceneryModel model = make_bernoulli_scenery({0.7, 0.3});
  double prev = 1e300;
  for (double eps = 0.01; eps < 1.0; eps += 0.01) {
    const double v = log2_phi_for_size(model, 5000, eps);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(Phi, LargeRangesFollowEntropy) {
  const SceneryModel model = make_bernoulli_scenery({0.8, 0.2});
  for (std::int64_t m : {1000, 100000, 10000000}) {
    const double v = log2_phi_for_size(model, m, 0.5);
    // At eps = 1/2 the threshold sits at the median of the information.
    EXPECT_NEAR(v / static_cast<double>(m), model.entropy_bits(),
                3.0 * std::sqrt(model.information_variance() / static_cast<double>(m)) +
                    2.0 * std::log2(static_cast<double>(m)) / static_cast<double>(m));
  }
  EXPECT_THROW(log2_phi_for_size(model, 10, 0.0), std::domain_error);
  EXPECT_THROW(log2_phi_for_size(model, 10, 1.0), std::domain_error);
}

TEST(QUpperBound, Values) {
  EXPECT_EQ(q_upper_bound(100, 0.0, 2), 0.0);
  EXPECT_NEAR(q_upper_bound(100, 0.1, 2), 53.9766967495332, 1e-10);
  EXPECT_NEAR(q_upper_bound(1000, 0.001, 2), 10.965784284662087, 1e-10);
  double prev = 0.0;
  for (double eps = 0.0; eps <= 0.5; eps += 0.01) {
    const double q = q_upper_bound(500, eps, 3);
    EXPECT_GE(q, prev);
    prev = q;
  }
  EXPECT_THROW(q_upper_bound(100, 0.6, 2), std::domain_error);
}

TEST(QRwrsBound, Arithmetic) {
  // Upsilon = (0, 1), Gamma = [1/16, 15/16]: M = 1, mu = 1/8.
  std::vector<std::int64_t> g;
  std::vector<std::int64_t> u;
  for (std::int64_t p = 1; p <= 14; ++p) g.push_back(p);
  for (std::int64_t p = 0; p <= 15; ++p) u.push_back(p);
  const AdmissiblePair pair = is_admissible({4, g, Openness::closed}, {4, u, Openness::open}, 2, 10.0);
  std::vector<std::int64_t> counts(80, 0);
  for (std::int64_t k = 1; k < 80; ++k) counts[static_cast<std::size_t>(k)] = (k >= 5 && k <= 75) ? 3 : 1;
  OccupationField f;
  for (std::int64_t k = 1; k < 80; ++k) {
    f.sites.push_back(k);
    f.counts.push_back(counts[static_cast<std::size_t>(k)]);
    f.n += counts[static_cast<std::size_t>(k)];
  }
  // log2 C(80, 20) + 20.
  EXPECT_NEAR(*q_rwrs_bound(f, pair, 80.0, 1.0, 1.0, 2), 81.61654494037865, 1e-9);
  // Local time on Gamma not above theta.
  EXPECT_FALSE(q_rwrs_bound(f, pair, 80.0, 1.0, 3.0, 2).has_value());
  // A range point outside Upsilon.
  f.sites.push_back(80);
  f.counts.push_back(1);
  EXPECT_FALSE(q_rwrs_bound(f, pair, 80.0, 1.0, 1.0, 2).has_value());
}

TEST(QRwrsBound, ZeroGap) {
  const DyadicSet cells{2, {1, 2}, Openness::closed};
  const AdmissiblePair pair = is_admissible(cells, cells, 2, 0.1);
  OccupationField f;
  for (std::int64_t k = 3; k <= 7; ++k) {
    f.sites.push_back(k);
    f.counts.push_back(2);
    f.n += 2;
  }
  EXPECT_EQ(*q_rwrs_bound(f, pair, 10.0, 1.0, 1.0, 2), 0.0);
}

TEST(QRwrsBound, StirlingLimit) {
  // Admissible pairs around [0, 1]: bound / a_n stays below E log2(e).
  for (int kappa = 3; kappa <= 8; ++kappa) {
    const std::int64_t cells = std::int64_t{1} << kappa;
    for (std::int64_t gap = 1; gap <= 3; ++gap) {
      std::vector<std::int64_t> g;
      std::vector<std::int64_t> u;
      for (std::int64_t p = gap; p < cells - gap; ++p) g.push_back(p);
      for (std::int64_t p = 0; p < cells; ++p) u.push_back(p);
      for (double threshold : {0.2, 0.5, 1.0}) {
        const AdmissiblePair pair =
            is_admissible({kappa, g, Openness::closed}, {kappa, u, Openness::open}, 2, threshold);
        if (!pair.admissible) continue;
        const double a_n = 1000.0;
        OccupationField f;
        for (std::int64_t k = 1; k < 1000; ++k) {
          f.sites.push_back(k);
          f.counts.push_back(5);
          f.n += 5;
        }
        const auto bound = q_rwrs_bound(f, pair, a_n, 1.0, 1.0, 2);
        ASSERT_TRUE(bound.has_value());
        EXPECT_LE(*bound / a_n, threshold * std::log2(std::exp(1.0)) * 1.05);
      }
    }
  }
}

TEST(QExact, HandValues) {
  const SceneryModel model = make_bernoulli_scenery({0.5, 0.5});
  const OccupationField f = field_of({2, 1});
  const auto words = all_words(model, f);
  ASSERT_EQ(words.size(), 4U);
  EXPECT_EQ(q_exact_small(f, words, 0.4), 2);
  EXPECT_EQ(q_exact_small(f, words, 0.3), 1);
  EXPECT_EQ(q_exact_small(f, words, 0.99), 3);
  const std::vector<SceneryWord> same(5, words[1]);
  EXPECT_EQ(q_exact_small(f, same, 0.01), 5);
}

TEST(AllWords, Lexicographic) {
  const auto words = all_words(make_bernoulli_scenery({0.2, 0.3, 0.5}), field_of({1, 1}));
  ASSERT_EQ(words.size(), 9U);
  EXPECT_EQ(words[0].symbols, (std::vector<Symbol>{0, 0}));
  EXPECT_EQ(words[1].symbols, (std::vector<Symbol>{0, 1}));
  EXPECT_EQ(words[8].symbols, (std::vector<Symbol>{2, 2}));
}

struct KCase {
  std::vector<double> probs;
  std::vector<std::int64_t> counts;
  double epsilon;
  std::int64_t k;
};

// Minimal covers from a mixed-integer program (tests/oracles/derive_values.py).
TEST(KExact, MatchesIntegerProgram) {
  const std::vector<KCase> cases = {
      {{0.5, 0.5}, {2, 1}, 0.3, 3},
      {{0.5, 0.5}, {1, 4, 4, 1, 4, 4}, 0.0881, 27},
      {{0.7, 0.3}, {1, 2, 3, 1, 2}, 0.15, 7},
      {{0.7, 0.3}, {3, 1, 4, 1, 5, 2}, 0.21, 4},
      {{0.6, 0.3, 0.1}, {2, 2, 1, 3}, 0.12, 34},
      {{0.25, 0.25, 0.25, 0.25}, {1, 3, 2}, 0.3, 12},
      {{0.4, 0.3, 0.2, 0.1}, {2, 1, 1}, 0.05, 50},
      {{0.55, 0.45}, {1, 1, 2, 2, 3, 3, 4}, 0.243, 8},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(k_exact_small(make_bernoulli_scenery(c.probs), field_of(c.counts), c.epsilon), c.k)
        << "eps " << c.epsilon;
  }
}

TEST(KExact, OneBallAtLargeRadius) {
  EXPECT_EQ(k_exact_small(make_bernoulli_scenery({0.5, 0.5}), field_of({2, 1}), 0.7), 1);
}

TEST(KExact, SingletonBallsGivePhi) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 6;
    std::vector<std::int64_t> counts(m);
    std::int64_t n = 0;
    for (auto& c : counts) n += (c = 1 + static_cast<std::int64_t>(rng() % 4));
    const double min_distance = 1.0 / static_cast<double>(n);
    const double eps = min_distance * 0.999 * to_unit(rng());
    if (eps <= 0.0) continue;
    const SceneryModel model = make_bernoulli_scenery({0.65, 0.35});
    const OccupationField f = field_of(counts);
    EXPECT_EQ(k_exact_small(model, f, eps), phi_exact_small(model, f, eps));
  }
}

// Every subset of centres, smallest first.
std::int64_t k_by_subsets(std::span<const double> masses, const std::vector<std::vector<bool>>& within,
                          double epsilon) {
  const auto w = masses.size();
  std::int64_t best = static_cast<std::int64_t>(w);
  for (std::uint32_t subset = 1; subset < (1U << w); ++subset) {
    const int size = std::popcount(subset);
    if (size >= best) continue;
    double mass = 0.0;
    for (std::size_t x = 0; x < w; ++x) {
      for (std::size_t c = 0; c < w; ++c) {
        if (((subset >> c) & 1U) && within[c][x]) {
          mass += masses[x];
          break;
        }
      }
    }
    if (mass > 1.0 - epsilon) best = size;
  }
  return best;
}

TEST(MinBallCover, MatchesSubsetSearch) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t w = 1 + rng() % 14;
    std::vector<double> masses(w);
    std::vector<double> points(w);
    double total = 0.0;
    for (auto& m : masses) total += (m = 0.01 + to_unit(rng()));
    for (auto& m : masses) m /= total;
    for (auto& p : points) p = to_unit(rng());
    const double radius = 0.3 * to_unit(rng());
    const double eps = 0.01 + 0.8 * to_unit(rng());
    std::vector<std::vector<bool>> within(w, std::vector<bool>(w));
    for (std::size_t c = 0; c < w; ++c) {
      for (std::size_t x = 0; x < w; ++x) within[c][x] = std::abs(points[c] - points[x]) <= radius;
    }
    const auto got = min_ball_cover(masses, [&](std::size_t c, std::size_t x) { return within[c][x]; }, eps);
    EXPECT_EQ(got, k_by_subsets(masses, within, eps)) << "trial " << trial;
  }
}

TEST(KExact, SandwichAndMergeMonotonicity) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t alphabet = 2 + rng() % 3;
    std::vector<double> p(alphabet);
    double total = 0.0;
    for (double& x : p) total += (x = 0.05 + to_unit(rng()));
    for (double& x : p) x /= total;
    const SceneryModel model = make_bernoulli_scenery(p);
    std::size_t m = 1 + rng() % 6;
    while (std::pow(static_cast<double>(alphabet), static_cast<double>(m)) > 128) --m;
    std::vector<std::int64_t> counts(m);
    for (auto& c : counts) c = 1 + static_cast<std::int64_t>(rng() % 4);
    const OccupationField f = field_of(counts);
    const double eps = 0.01 + 0.69 * to_unit(rng());
    const std::int64_t k = k_exact_small(model, f, eps);
    const std::int64_t phi = phi_exact_small(model, f, eps);
    const std::int64_t q = q_exact_small(f, all_words(model, f), eps);
    EXPECT_LE(k, phi);
    EXPECT_LE(phi, k * q);
    const std::size_t i = rng() % alphabet;
    std::size_t j = rng() % (alphabet - 1);
    if (j >= i) ++j;
    EXPECT_LE(k_exact_small(merge_symbols(model, i, j), f, eps), k);
  }
}

TEST(KExact, RejectsLargeInstances) {
  const SceneryModel model = make_bernoulli_scenery({0.5, 0.5});
  EXPECT_THROW(k_exact_small(model, field_of(std::vector<std::int64_t>(13, 1)), 0.1), std::domain_error);
  EXPECT_THROW(k_exact_block_refinement(model, 12, 2, 0.1), std::domain_error);
}

TEST(BlockRefinement, SingleBlocksAreTheDirectProduct) {
  const SceneryModel model = make_bernoulli_scenery({0.6, 0.4});
  for (std::int64_t n = 1; n <= 8; ++n) {
    for (double eps : {0.05, 0.2, 0.45}) {
      EXPECT_EQ(k_exact_block_refinement(model, n, 1, eps),
                k_exact_small(model, field_of(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1)), eps));
    }
  }
}

TEST(BlockRefinement, RefinementInequalities) {
  const SceneryModel model = make_bernoulli_scenery({0.5, 0.5});
  for (std::int64_t n = 3; n <= 9; ++n) {
    for (double eps : {0.05, 0.1, 0.2, 0.3, 0.4}) {
      const std::int64_t fine = k_exact_block_refinement(model, n, 1, eps / 2.0);
      EXPECT_LE(fine, k_exact_block_refinement(model, n, 2, eps / 2.0));
      const double wide = 2.0 * eps + 4.0 / static_cast<double>(n);
      if (wide < 1.0) EXPECT_LE(k_exact_block_refinement(model, n, 2, wide), fine);
    }
  }
}

TEST(Sandwich, Clamps) {
  EXPECT_EQ(sandwich(10, 0).lo, 10.0);
  EXPECT_EQ(sandwich(10, 0).hi, 10.0);
  EXPECT_EQ(sandwich(10, 3).lo, 7.0);
  EXPECT_EQ(sandwich(3, 5).lo, 0.0);
  EXPECT_EQ(sandwich(3, 5).hi, 3.0);
  EXPECT_THROW(sandwich(-1, 0), std::domain_error);
}

TEST(EstimateComplexity, FieldsAgree) {
  const JumpLaw law = make_lazy_gaussian_jump(0.5);
  const OccupationField f = simulate_occupation(law, 10000, 3);
  const SceneryModel model = make_bernoulli_scenery({0.8, 0.2});
  const ComplexityEstimate est = estimate_complexity(model, f, 0.1);
  EXPECT_EQ(est.n, 10000);
  EXPECT_EQ(est.log2_phi, phi_estimate(model, f, 0.1));
  EXPECT_EQ(est.log2_q_upper, q_upper_bound(10000, 0.1, 2));
  EXPECT_LE(est.log2_k.lo, est.log2_k.hi);
  EXPECT_EQ(est.log2_k.hi, est.log2_phi);
}

TEST(EstimateComplexity, UnitStepEntropyNormalization) {
  const JumpLaw law = testing::make_unit_step_jump();
  const SceneryModel uniform = make_bernoulli_scenery({0.5, 0.5});
  for (std::int64_t n : {10, 100, 1000, 100000}) {
    const OccupationField f = simulate_occupation(law, n, 1);
    for (double eps : {0.01, 0.1, 0.5}) {
      const double v = phi_estimate(uniform, f, eps);
      EXPECT_NEAR(v, static_cast<double>(n) + std::log2(1.0 - eps), 1.0);
    }
  }
}

}  // namespace
}  // namespace rwrs
