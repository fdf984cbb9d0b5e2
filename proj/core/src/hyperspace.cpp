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

#include "rwrs/hyperspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace rwrs {

HyperSet HyperSet::from_intervals(std::vector<Interval> intervals) {
  if (intervals.empty()) throw std::domain_error("HyperSet must be nonempty");
  for (const auto& iv : intervals) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw std::domain_error("HyperSet endpoints must be finite");
    }
    if (iv.lo > iv.hi) throw std::domain_error("HyperSet interval has lo > hi");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  HyperSet set;
  set.intervals_.reserve(intervals.size());
  for (const auto& iv : intervals) {
    if (!set.intervals_.empty() && iv.lo <= set.intervals_.back().hi) {
      set.intervals_.back().hi = std::max(set.intervals_.back().hi, iv.hi);
    } else {
      set.intervals_.push_back(iv);
    }
  }
  return set;
}

HyperSet HyperSet::from_points(std::span<const double> points) {
  std::vector<Interval> intervals;
  intervals.reserve(points.size());
  for (double x : points) intervals.push_back({x, x});
  return from_intervals(std::move(intervals));
}

double HyperSet::lebesgue() const noexcept {
  double total = 0.0;
  for (const auto& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

bool HyperSet::contains(double x) const noexcept { return distance_to(x) == 0.0; }

double HyperSet::distance_to(double x) const noexcept {
  // First interval whose hi >= x.
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, double v) { return iv.hi < v; });
  double best = std::numeric_limits<double>::infinity();
  if (it != intervals_.end()) best = std::max(0.0, it->lo - x);
  if (it != intervals_.begin()) best = std::min(best, x - std::prev(it)->hi);
  return best;
}

HyperSet HyperSet::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::domain_error("scale factor must be positive");
  HyperSet out = *this;
  for (auto& iv : out.intervals_) {
    iv.lo *= factor;
    iv.hi *= factor;
  }
  return out;
}

namespace {

// sup_{x in a} dist(x, b). On each interval of `a` the distance to `b` is
// piecewise linear, peaking only at endpoints or at midpoints of gaps of b.
double directed_distance(const HyperSet& a, const HyperSet& b) {
  const auto bi = b.intervals();
  double best = 0.0;
  std::size_t gap = 0;  // gap g lies between bi[g] and bi[g+1]
  for (const auto& iv : a.intervals()) {
    best = std::max({best, b.distance_to(iv.lo), b.distance_to(iv.hi)});
    while (gap + 1 < bi.size() && 0.5 * (bi[gap].hi + bi[gap + 1].lo) <= iv.lo) ++gap;
    std::size_t g = gap;
    while (g + 1 < bi.size()) {
      const double mid = 0.5 * (bi[g].hi + bi[g + 1].lo);
      if (mid >= iv.hi) break;
      best = std::max(best, 0.5 * (bi[g + 1].lo - bi[g].hi));
      ++g;
    }
    gap = g;
  }
  return best;
}

}  // namespace

double hausdorff_distance(const HyperSet& a, const HyperSet& b) {
  return std::max(directed_distance(a, b), directed_distance(b, a));
}

double DyadicSet::cell_width() const noexcept { return std::ldexp(1.0, -kappa); }

double DyadicSet::lebesgue() const noexcept {
  return static_cast<double>(cells.size()) * cell_width();
}

bool DyadicSet::contains(double x) const noexcept {
  const double y = std::ldexp(x, kappa);
  const double fl = std::floor(y);
  const auto p = static_cast<std::int64_t>(fl);
  const auto has = [&](std::int64_t q) { return std::binary_search(cells.begin(), cells.end(), q); };
  if (y != fl) return has(p);
  // On a cell edge: the open set needs both neighbours, the closed one either.
  return openness == Openness::open ? (has(p - 1) && has(p)) : (has(p - 1) || has(p));
}

HyperSet DyadicSet::closure() const {
  if (cells.empty()) throw std::domain_error("closure of an empty dyadic set");
  std::vector<Interval> runs;
  const double w = cell_width();
  std::int64_t start = cells.front();
  std::int64_t prev = start;
  for (std::size_t i = 1; i <= cells.size(); ++i) {
    if (i < cells.size() && cells[i] == prev + 1) {
      prev = cells[i];
      continue;
    }
    runs.push_back({static_cast<double>(start) * w, static_cast<double>(prev + 1) * w});
    if (i < cells.size()) start = prev = cells[i];
  }
  return HyperSet::from_intervals(std::move(runs));
}

DyadicSet dyadic_inner(const HyperSet& e, int kappa) {
  if (kappa < 0) throw std::domain_error("kappa must be nonnegative");
  DyadicSet out{kappa, {}, Openness::closed};
  for (const auto& iv : e.intervals()) {
    if (!(iv.lo < iv.hi)) continue;
    // [p, p+1] inside (lo, hi) in scaled units.
    const auto first = static_cast<std::int64_t>(std::floor(std::ldexp(iv.lo, kappa))) + 1;
    const auto last = static_cast<std::int64_t>(std::ceil(std::ldexp(iv.hi, kappa))) - 2;
    for (auto p = first; p <= last; ++p) out.cells.push_back(p);
  }
  return out;
}

DyadicSet dyadic_outer(const HyperSet& e, int kappa) {
  if (kappa < 0) throw std::domain_error("kappa must be nonnegative");
  DyadicSet out{kappa, {}, Openness::open};
  for (const auto& iv : e.intervals()) {
    const auto first = static_cast<std::int64_t>(std::ceil(std::ldexp(iv.lo, kappa))) - 1;
    const auto last = static_cast<std::int64_t>(std::floor(std::ldexp(iv.hi, kappa)));
    for (auto p = first; p <= last; ++p) out.cells.push_back(p);
  }
  std::sort(out.cells.begin(), out.cells.end());
  out.cells.erase(std::unique(out.cells.begin(), out.cells.end()), out.cells.end());
  return out;
}

double binary_entropy(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("binary entropy needs t in [0, 1]");
  if (t == 0.0 || t == 1.0) return 0.0;
  return -t * std::log(t) - (1.0 - t) * std::log1p(-t);
}

AdmissiblePair is_admissible(const DyadicSet& gamma, const DyadicSet& upsilon,
                             int alphabet_size, double threshold) {
  if (gamma.kappa != upsilon.kappa) throw std::domain_error("dyadic orders differ");
  if (alphabet_size < 1) throw std::domain_error("alphabet size must be positive");
  if (!std::includes(upsilon.cells.begin(), upsilon.cells.end(), gamma.cells.begin(),
                     gamma.cells.end())) {
    throw std::domain_error("gamma is not contained in upsilon");
  }
  AdmissiblePair pair;
  pair.gamma = gamma;
  pair.gamma.openness = Openness::closed;
  pair.upsilon = upsilon;
  pair.upsilon.openness = Openness::open;
  pair.kappa = gamma.kappa;
  pair.mu = static_cast<double>(upsilon.cells.size() - gamma.cells.size()) * upsilon.cell_width();
  pair.M = upsilon.lebesgue();
  pair.alphabet_size = alphabet_size;
  pair.threshold = threshold;
  const double three_mu = 3.0 * pair.mu;
  pair.admissible = pair.mu < threshold && three_mu <= 1.0 &&
                    pair.M * binary_entropy(three_mu) +
                            three_mu * std::log(static_cast<double>(alphabet_size)) <
                        threshold;
  return pair;
}

Lemma4Cover lemma4_cover(std::span<const HyperSet> samples, int kappa, int alphabet_size,
                         double threshold) {
  using Key = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;
  std::map<Key, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto inner = dyadic_inner(samples[i], kappa);
    auto outer = dyadic_outer(samples[i], kappa);
    groups[{std::move(inner.cells), std::move(outer.cells)}].push_back(i);
  }
  Lemma4Cover cover;
  cover.kappa = kappa;
  std::size_t covered = 0;
  for (auto& [key, members] : groups) {
    DyadicSet gamma{kappa, key.first, Openness::closed};
    DyadicSet upsilon{kappa, key.second, Openness::open};
    SignatureClass cls{is_admissible(gamma, upsilon, alphabet_size, threshold), std::move(members)};
    if (cls.pair.admissible) covered += cls.members.size();
    cover.classes.push_back(std::move(cls));
  }
  cover.coverage = samples.empty() ? 0.0
                                   : static_cast<double>(covered) /
                                         static_cast<double>(samples.size());
  return cover;
}

Lemma4Cover lemma4_cover_auto(std::span<const HyperSet> samples, int alphabet_size,
                              double threshold, int kappa_cap, double target) {
  if (kappa_cap < 0) throw std::domain_error("kappa cap must be nonnegative");
  for (int kappa = 0;; ++kappa) {
    auto cover = lemma4_cover(samples, kappa, alphabet_size, threshold);
    if (cover.coverage >= target || kappa >= kappa_cap) return cover;
  }
}

}  // namespace rwrs
