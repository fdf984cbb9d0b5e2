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

// I.i.d. finite-alphabet sceneries. A scenery realization is never stored:
// the symbol at site k in a trial with scenery seed s is a fixed function of
// mix64(s ^ mix64(k)), so overlapping site sets always agree.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/hyperspace.hpp"

namespace rwrs {

using Symbol = std::uint32_t;

class SceneryModel {
 public:
  std::size_t alphabet_size() const noexcept { return probs_.size(); }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::vector<double>& log2_probs() const noexcept { return log2_probs_; }
  /// h = -sum p log2 p.
  double entropy_bits() const noexcept { return entropy_bits_; }
  /// Var of the self-information -log2 p(X), in bits^2.
  double information_variance() const noexcept { return information_variance_; }

  /// The symbol at `site` in the realization labelled by `seed`.
  Symbol symbol_at(std::uint64_t seed, std::int64_t site) const noexcept;

 private:
  std::vector<double> probs_;
  std::vector<double> log2_probs_;
  std::vector<double> cumulative_;  // cumulative_[i] = p_0 + ... + p_i
  double entropy_bits_ = 0.0;
  double information_variance_ = 0.0;

  friend SceneryModel make_bernoulli_scenery(std::vector<double> probs);
};

/// Throws std::domain_error unless every p > 0 and |sum p - 1| <= 1e-12.
SceneryModel make_bernoulli_scenery(std::vector<double> probs);

/// The coarser model in which symbols i and j are one symbol (placed at
/// min(i, j); later symbols shift down by one).
SceneryModel merge_symbols(const SceneryModel& model, std::size_t i, std::size_t j);

/// Maps a word of `model` to the merged alphabet of merge_symbols(model, i, j).
Symbol merged_symbol(Symbol s, std::size_t i, std::size_t j) noexcept;

struct SceneryWord {
  std::vector<std::int64_t> sites;  // strictly increasing
  std::vector<Symbol> symbols;

  friend bool operator==(const SceneryWord&, const SceneryWord&) = default;
};

/// Throws std::domain_error if `sites` is not strictly increasing.
SceneryWord sample_scenery_word(const SceneryModel& model, std::span<const std::int64_t> sites,
                                std::uint64_t seed);

/// log2 of the product measure of the cylinder; throws std::domain_error on
/// a symbol outside the alphabet.
double word_log2_probability(const SceneryModel& model, const SceneryWord& word);
double word_probability(const SceneryModel& model, const SceneryWord& word);
/// -log2 word_probability, in bits.
double conditional_information(const SceneryModel& model, const SceneryWord& word);

/// (a_n Lambda) cap Z for a finite union Lambda of closed intervals.
std::vector<std::int64_t> folner_sites(const HyperSet& lambda, double a_n);

}  // namespace rwrs
