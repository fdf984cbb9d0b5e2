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

// Complexity functionals of the RWRS along one walk: Hamming distances of
// scenery words weighted by local time, Phi_{n,eps}, bounds and exact values
// of Q(P, n, eps), exact K on tiny instances, and the sandwich
// Phi / Q <= K <= Phi. All logarithms are base 2.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rwrs/hyperspace.hpp"
#include "rwrs/scenery.hpp"
#include "rwrs/walk_engine.hpp"

namespace rwrs {

struct SandwichInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ComplexityEstimate {
  std::int64_t n = 0;
  double epsilon = 0.0;
  double log2_phi = 0.0;
  double log2_q_upper = 0.0;
  std::optional<double> log2_q_exact;
  SandwichInterval log2_k;
};

/// (1/n) sum_{k in V_n} N_{n,k} [w_k != w2_k]. Throws std::domain_error
/// unless both words live on the field's range.
double rwrs_word_distance(const OccupationField& field, const SceneryWord& w,
                          const SceneryWord& w2);

/// log2 Phi_{n,eps} for a range of `range_size` sites: the fewest most
/// likely words whose total mass strictly exceeds 1 - eps. Words are
/// grouped into equal-probability composition classes, so nothing is
/// enumerated.
double log2_phi_for_size(const SceneryModel& model, std::int64_t range_size, double epsilon);

/// log2_phi_for_size(model, #V_n, epsilon). Throws std::domain_error unless
/// 0 < epsilon < 1.
double phi_estimate(const SceneryModel& model, const OccupationField& field, double epsilon);

/// Phi by enumerating and sorting all N^{#V} words (at most 2^20; throws
/// std::domain_error otherwise).
std::int64_t phi_exact_small(const SceneryModel& model, const OccupationField& field,
                             double epsilon);

/// r log2 |P| + log2 C(n, r) with r = floor(eps n).
double q_upper_bound(std::int64_t n, double epsilon, std::int64_t alphabet_size);

/// log2 C(ceil(M a_n), ceil(2 mu a_n)) + 2 mu a_n log2 |beta|, or nullopt
/// when the walk is outside the pair's event: some site of a_n Gamma has
/// scaled local time <= theta, or a range point lies outside Upsilon.
std::optional<double> q_rwrs_bound(const OccupationField& field, const AdmissiblePair& pair,
                                   double a_n, double abar_n, double theta,
                                   std::int64_t alphabet_size);

/// max_a #{c : d(a, c) <= eps} over the given words (at most 2^16).
std::int64_t q_exact_small(const OccupationField& field, std::span<const SceneryWord> words,
                           double epsilon);

/// Every word over the field's range, in lexicographic order of symbols.
std::vector<SceneryWord> all_words(const SceneryModel& model, const OccupationField& field);

/// Minimal number of balls {c : within(center, c)} (centers range over all
/// words) whose union has mass strictly above 1 - epsilon. Exact branch and
/// bound; meant for a few thousand words at most.
std::int64_t min_ball_cover(std::span<const double> masses,
                            const std::function<bool(std::size_t, std::size_t)>& within,
                            double epsilon);

/// Exact K(P, n, eps) over the field's range (N^{#V} <= 2^12; throws
/// std::domain_error otherwise).
std::int64_t k_exact_small(const SceneryModel& model, const OccupationField& field,
                           double epsilon);

/// Exact K(P_k, n, eps) for the direct product of the +1 shift with the
/// scenery: words live on sites 0..n+k-2 and the distance is the fraction of
/// j < n whose k-blocks w_j..w_{j+k-1} differ. k = 1 gives K(P, n, eps).
/// Throws std::domain_error if N^{n+k-1} > 2^12.
std::int64_t k_exact_block_refinement(const SceneryModel& model, std::int64_t n,
                                      std::int64_t k, double epsilon);

/// [max(log2_phi - log2_q, 0), log2_phi].
SandwichInterval sandwich(double log2_phi, double log2_q);

/// Phi and the Radioactivity bound at (n, eps) for one walk.
ComplexityEstimate estimate_complexity(const SceneryModel& model, const OccupationField& field,
                                       double epsilon);

}  // namespace rwrs
