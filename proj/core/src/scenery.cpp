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

#include "rwrs/scenery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "rwrs/seeding.hpp"

namespace rwrs {

Symbol SceneryModel::symbol_at(std::uint64_t seed, std::int64_t site) const noexcept {
  const double u = to_unit(mix64(seed ^ mix64(static_cast<std::uint64_t>(site))));
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, u);
  return static_cast<Symbol>(it - cumulative_.begin());
}

SceneryModel make_bernoulli_scenery(std::vector<double> probs) {
  if (probs.empty()) throw std::domain_error("scenery needs at least one symbol");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p > 0.0)) throw std::domain_error("scenery probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::domain_error("scenery probabilities must sum to 1");
  SceneryModel model;
  model.probs_ = std::move(probs);
  double h = 0.0;
  double second = 0.0;
  double cum = 0.0;
  for (double p : model.probs_) {
    const double info = -std::log2(p);
    model.log2_probs_.push_back(-info);
    h += p * info;
    second += p * info * info;
    cum += p;
    model.cumulative_.push_back(cum);
  }
  model.entropy_bits_ = h;
  model.information_variance_ = std::max(0.0, second - h * h);
  return model;
}

Symbol merged_symbol(Symbol s, std::size_t i, std::size_t j) noexcept {
  const auto lo = std::min(i, j);
  const auto hi = std::max(i, j);
  if (s == hi) return static_cast<Symbol>(lo);
  return s > hi ? s - 1 : s;
}

SceneryModel merge_symbols(const SceneryModel& model, std::size_t i, std::size_t j) {
  const auto n = model.alphabet_size();
  if (i == j || i >= n || j >= n) throw std::domain_error("invalid symbol pair to merge");
  std::vector<double> merged(n - 1, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    merged[merged_symbol(static_cast<Symbol>(s), i, j)] += model.probs()[s];
  }
  // Renormalize so the sum check cannot trip on rounding.
  const double total = std::accumulate(merged.begin(), merged.end(), 0.0);
  for (double& p : merged) p /= total;
  return make_bernoulli_scenery(std::move(merged));
}

SceneryWord sample_scenery_word(const SceneryModel& model, std::span<const std::int64_t> sites,
                                std::uint64_t seed) {
  if (std::adjacent_find(sites.begin(), sites.end(), std::greater_equal<>()) != sites.end()) {
    throw std::domain_error("scenery sites must be strictly increasing");
  }
  SceneryWord word{{sites.begin(), sites.end()}, {}};
  word.symbols.reserve(sites.size());
  for (std::int64_t k : sites) word.symbols.push_back(model.symbol_at(seed, k));
  return word;
}

double word_log2_probability(const SceneryModel& model, const SceneryWord& word) {
  double total = 0.0;
  for (Symbol s : word.symbols) {
    if (s >= model.alphabet_size()) throw std::domain_error("symbol outside the alphabet");
    total += model.log2_probs()[s];
  }
  return total;
}

double word_probability(const SceneryModel& model, const SceneryWord& word) {
  return std::exp2(word_log2_probability(model, word));
}

double conditional_information(const SceneryModel& model, const SceneryWord& word) {
  return -word_log2_probability(model, word);
}

std::vector<std::int64_t> folner_sites(const HyperSet& lambda, double a_n) {
  if (!(a_n > 0.0)) throw std::domain_error("a_n must be positive");
  std::vector<std::int64_t> sites;
  for (const auto& iv : lambda.intervals()) {
    const auto k1 = static_cast<std::int64_t>(std::ceil(iv.lo * a_n));
    const auto k2 = static_cast<std::int64_t>(std::floor(iv.hi * a_n));
    for (auto k = k1; k <= k2; ++k) sites.push_back(k);
  }
  return sites;
}

}  // namespace rwrs
