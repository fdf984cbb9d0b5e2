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
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rwrs {
namespace {

// Distances are ratios of integers; this absorbs their rounding.
constexpr double kDistanceSlack = 1e-12;
constexpr std::int64_t kEnumerationLimit = std::int64_t{1} << 20;

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must lie in (0, 1)");
}

double log2_binomial(double n, double r) {
  return (std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0)) /
         std::numbers::ln2;
}

double log2_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  const double hi = std::max(a, b);
  return hi + std::log2(1.0 + std::exp2(std::min(a, b) - hi));
}

// N^m, or -1 when it exceeds `limit`.
std::int64_t word_count(std::size_t alphabet, std::int64_t m, std::int64_t limit) {
  std::int64_t total = 1;
  for (std::int64_t i = 0; i < m; ++i) {
    total *= static_cast<std::int64_t>(alphabet);
    if (total > limit) return -1;
  }
  return total;
}

// Symbols of word `index` (first site most significant).
void decode_word(std::int64_t index, std::size_t alphabet, std::span<Symbol> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Symbol>(index % static_cast<std::int64_t>(alphabet));
    index /= static_cast<std::int64_t>(alphabet);
  }
}

struct CompositionClass {
  double log2_word_probability;
  double log2_multiplicity;
};

void enumerate_compositions(std::span<const double> log2_values, std::span<const double> log2_groups,
                            std::int64_t remaining, std::size_t g, double log2_p, double log2_mult,
                            std::vector<CompositionClass>& out) {
  if (g + 1 == log2_values.size()) {
    const auto c = static_cast<double>(remaining);
    out.push_back({log2_p + c * log2_values[g],
                   log2_mult - std::lgamma(c + 1.0) / std::numbers::ln2 + c * log2_groups[g]});
    return;
  }
  for (std::int64_t c = 0; c <= remaining; ++c) {
    const auto cd = static_cast<double>(c);
    enumerate_compositions(log2_values, log2_groups, remaining - c, g + 1,
                           log2_p + cd * log2_values[g],
                           log2_mult - std::lgamma(cd + 1.0) / std::numbers::ln2 +
                               cd * log2_groups[g],
                           out);
  }
}

std::vector<double> word_masses(const SceneryModel& model, std::int64_t length,
                                std::int64_t count, std::vector<Symbol>& symbols) {
  std::vector<double> masses(static_cast<std::size_t>(count));
  symbols.resize(static_cast<std::size_t>(count * length));
  for (std::int64_t w = 0; w < count; ++w) {
    std::span<Symbol> word(symbols.data() + w * length, static_cast<std::size_t>(length));
    decode_word(w, model.alphabet_size(), word);
    double p = 1.0;
    for (Symbol s : word) p *= model.probs()[s];
    masses[static_cast<std::size_t>(w)] = p;
  }
  return masses;
}

}  // namespace

double rwrs_word_distance(const OccupationField& field, const SceneryWord& w,
                          const SceneryWord& w2) {
  if (w.sites != field.sites || w2.sites != field.sites || w.symbols.size() != w.sites.size() ||
      w2.symbols.size() != w2.sites.size()) {
    throw std::domain_error("words must be defined on the field's range");
  }
  std::int64_t weight = 0;
  for (std::size_t i = 0; i < field.sites.size(); ++i) {
    if (w.symbols[i] != w2.symbols[i]) weight += field.counts[i];
  }
  return static_cast<double>(weight) / static_cast<double>(field.n);
}

double log2_phi_for_size(const SceneryModel& model, std::int64_t range_size, double epsilon) {
  require_epsilon(epsilon);
  if (range_size < 0) throw std::domain_error("range size must be nonnegative");
  if (range_size == 0) return 0.0;

  // Symbols of equal probability are interchangeable: group them.
  std::vector<double> values(model.probs());
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<double> log2_values;
  std::vector<double> log2_groups;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    log2_values.push_back(std::log2(values[i]));
    log2_groups.push_back(std::log2(static_cast<double>(j - i)));
    i = j;
  }
  const double classes = std::exp(log2_binomial(static_cast<double>(range_size + log2_values.size() - 1),
                                                static_cast<double>(log2_values.size() - 1)) *
                                  std::numbers::ln2);
  if (classes > 2e7) throw std::domain_error("too many composition classes");

  std::vector<CompositionClass> all;
  all.reserve(static_cast<std::size_t>(classes + 0.5));
  enumerate_compositions(log2_values, log2_groups, range_size, 0, 0.0,
                         std::lgamma(static_cast<double>(range_size) + 1.0) / std::numbers::ln2,
                         all);
  std::sort(all.begin(), all.end(), [](const CompositionClass& a, const CompositionClass& b) {
    return a.log2_word_probability > b.log2_word_probability;
  });

  const double target = 1.0 - epsilon;
  double cum = 0.0;
  double log2_count = -INFINITY;
  for (const auto& cls : all) {
    const double mass = std::exp2(cls.log2_multiplicity + cls.log2_word_probability);
    if (cum + mass > target) {
      const double gap = target - cum;
      double log2_take;
      const double p = std::exp2(cls.log2_word_probability);
      if (p > 0.0 && gap / p < 0x1.0p50) {
        // Small enough to count exactly.
        double take = std::floor(gap / p) + 1.0;
        while (take > 1.0 && cum + (take - 1.0) * p > target) take -= 1.0;
        take = std::min(take, std::exp2(cls.log2_multiplicity));
        log2_take = std::log2(std::max(take, 1.0));
      } else {
        log2_take = gap > 0.0 ? std::log2(gap) - cls.log2_word_probability : 0.0;
        log2_take = std::clamp(log2_take, 0.0, cls.log2_multiplicity);
      }
      return log2_add(log2_count, log2_take);
    }
    cum += mass;
    log2_count = log2_add(log2_count, cls.log2_multiplicity);
  }
  // Rounding left the total just short of 1 - eps: every word is needed.
  return static_cast<double>(range_size) * std::log2(static_cast<double>(model.alphabet_size()));
}

double phi_estimate(const SceneryModel& model, const OccupationField& field, double epsilon) {
  return log2_phi_for_size(model, field.range_size(), epsilon);
}

std::int64_t phi_exact_small(const SceneryModel& model, const OccupationField& field,
                             double epsilon) {
  require_epsilon(epsilon);
  const std::int64_t m = field.range_size();
  const std::int64_t count = word_count(model.alphabet_size(), m, kEnumerationLimit);
  if (count < 0) throw std::domain_error("instance too large to enumerate");
  std::vector<Symbol> symbols;
  const auto masses = word_masses(model, m, count, symbols);
  std::vector<std::int64_t> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  // Index order is lexicographic order, so a stable sort breaks ties.
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return masses[static_cast<std::size_t>(a)] > masses[static_cast<std::size_t>(b)];
  });
  const double target = 1.0 - epsilon;
  double cum = 0.0;
  for (std::int64_t i = 0; i < count; ++i) {
    cum += masses[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    if (cum > target) return i + 1;
  }
  return count;
}

double q_upper_bound(std::int64_t n, double epsilon, std::int64_t alphabet_size) {
  if (n < 1) throw std::domain_error("n must be positive");
  if (!(epsilon >= 0.0 && epsilon <= 0.5)) throw std::domain_error("epsilon must lie in [0, 1/2]");
  if (alphabet_size < 1) throw std::domain_error("alphabet size must be positive");
  const double r = std::floor(epsilon * static_cast<double>(n) + 1e-9);
  return r * std::log2(static_cast<double>(alphabet_size)) +
         log2_binomial(static_cast<double>(n), r);
}

std::optional<double> q_rwrs_bound(const OccupationField& field, const AdmissiblePair& pair,
                                   double a_n, double abar_n, double theta,
                                   std::int64_t alphabet_size) {
  if (!(a_n > 0.0) || !(abar_n > 0.0)) throw std::domain_error("a_n and abar_n must be positive");
  if (alphabet_size < 1) throw std::domain_error("alphabet size must be positive");
  if (pair.gamma.empty()) return std::nullopt;
  double y = 0.0;
  try {
    y = min_local_time_over(field, pair.gamma.closure(), a_n, abar_n);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  if (!(y > theta)) return std::nullopt;
  DyadicSet upsilon = pair.upsilon;
  upsilon.openness = Openness::open;
  for (std::int64_t k : field.sites) {
    if (!upsilon.contains(static_cast<double>(k) / a_n)) return std::nullopt;
  }
  const double big = std::ceil(pair.M * a_n);
  const double small = std::min(std::ceil(2.0 * pair.mu * a_n), big);
  return log2_binomial(big, small) +
         2.0 * pair.mu * a_n * std::log2(static_cast<double>(alphabet_size));
}

std::int64_t q_exact_small(const OccupationField& field, std::span<const SceneryWord> words,
                           double epsilon) {
  if (words.size() > (std::size_t{1} << 16)) throw std::domain_error("too many words");
  std::int64_t best = 0;
  for (const auto& a : words) {
    std::int64_t inside = 0;
    for (const auto& c : words) {
      if (rwrs_word_distance(field, a, c) <= epsilon + kDistanceSlack) ++inside;
    }
    best = std::max(best, inside);
  }
  return best;
}

std::vector<SceneryWord> all_words(const SceneryModel& model, const OccupationField& field) {
  const std::int64_t m = field.range_size();
  const std::int64_t count = word_count(model.alphabet_size(), m, kEnumerationLimit);
  if (count < 0) throw std::domain_error("instance too large to enumerate");
  std::vector<SceneryWord> words(static_cast<std::size_t>(count));
  for (std::int64_t w = 0; w < count; ++w) {
    auto& word = words[static_cast<std::size_t>(w)];
    word.sites = field.sites;
    word.symbols.resize(static_cast<std::size_t>(m));
    decode_word(w, model.alphabet_size(), word.symbols);
  }
  return words;
}

namespace {

constexpr double kMassSlack = 1e-12;

// Largest mass a given number of balls can cover within one connected group
// of words.
class ComponentCover {
 public:
  ComponentCover(std::vector<double> masses, std::vector<std::vector<std::uint32_t>> balls)
      : masses_(std::move(masses)),
        balls_(std::move(balls)),
        stride_((masses_.size() + 63) / 64),
        state_(masses_.size(), kFree),
        available_(balls_.size(), 1),
        open_balls_(masses_.size(), 0),
        balls_of_(masses_.size()),
        conflict_(masses_.size() * stride_, 0) {
    for (std::uint32_t b = 0; b < balls_.size(); ++b) {
      for (std::uint32_t w : balls_[b]) {
        balls_of_[w].push_back(b);
        ++open_balls_[w];
      }
    }
    // conflict_[w] marks every word sharing some ball with w.
    std::vector<std::uint64_t> bits(stride_);
    for (const auto& ball : balls_) {
      std::fill(bits.begin(), bits.end(), 0);
      for (std::uint32_t w : ball) bits[w / 64] |= std::uint64_t{1} << (w % 64);
      for (std::uint32_t w : ball) {
        std::uint64_t* row = &conflict_[w * stride_];
        for (std::size_t i = 0; i < stride_; ++i) row[i] |= bits[i];
      }
    }
    by_mass_.resize(masses_.size());
    std::iota(by_mass_.begin(), by_mass_.end(), 0U);
    std::stable_sort(by_mass_.begin(), by_mass_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return masses_[a] > masses_[b]; });
    total_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
  }

  double total() const { return total_; }

  // Exact whenever the answer exceeds `floor`; otherwise only a lower bound.
  double max_cover(std::int64_t k, double at_least, double floor) {
    best_ = std::max(at_least, greedy(k));
    floor_ = floor;
    if (best_ < total_ - kMassSlack) search(0.0, k);
    return best_;
  }

 private:
  static constexpr char kFree = 0;
  static constexpr char kCovered = 1;
  static constexpr char kSkipped = 2;

  double gain(std::uint32_t b) const {
    double g = 0.0;
    for (std::uint32_t w : balls_[b]) {
      if (state_[w] == kFree) g += masses_[w];
    }
    return g;
  }

  void set_available(std::uint32_t b, bool on) {
    available_[b] = on ? 1 : 0;
    for (std::uint32_t w : balls_[b]) open_balls_[w] += on ? 1 : -1;
  }

  double greedy(std::int64_t k) {
    std::vector<char> saved = state_;
    double covered = 0.0;
    for (std::int64_t used = 0; used < k; ++used) {
      double best_gain = 0.0;
      std::uint32_t pick = 0;
      for (std::uint32_t b = 0; b < balls_.size(); ++b) {
        const double g = gain(b);
        if (g > best_gain) {
          best_gain = g;
          pick = b;
        }
      }
      if (best_gain == 0.0) break;
      for (std::uint32_t w : balls_[pick]) state_[w] = kCovered;
      covered += best_gain;
    }
    state_ = std::move(saved);
    return covered;
  }

  // The r largest gains bound what r more balls add.
  double gain_reach(std::int64_t left) {
    gains_.clear();
    for (std::uint32_t b = 0; b < balls_.size(); ++b) {
      if (available_[b]) gains_.push_back(gain(b));
    }
    const auto r = std::min<std::size_t>(static_cast<std::size_t>(left), gains_.size());
    std::partial_sort(gains_.begin(), gains_.begin() + static_cast<std::ptrdiff_t>(r),
                      gains_.end(), std::greater<>());
    return std::accumulate(gains_.begin(), gains_.begin() + static_cast<std::ptrdiff_t>(r), 0.0);
  }

  // Splits the free words into classes whose members pairwise share no ball.
  // A ball meets each class at most once, so r more balls reach at most the
  // r heaviest words of every class.
  double packing_reach(std::int64_t left) {
    class_union_.clear();
    class_masses_.clear();
    for (std::uint32_t w : by_mass_) {
      if (state_[w] != kFree || open_balls_[w] == 0) continue;
      const std::size_t classes = class_masses_.size();
      std::size_t j = 0;
      while (j < classes && ((class_union_[j * stride_ + w / 64] >> (w % 64)) & 1U)) ++j;
      if (j == classes) {
        class_union_.resize((classes + 1) * stride_, 0);
        class_masses_.emplace_back();
      }
      const std::uint64_t* row = &conflict_[w * stride_];
      std::uint64_t* u = &class_union_[j * stride_];
      for (std::size_t i = 0; i < stride_; ++i) u[i] |= row[i];
      class_masses_[j].push_back(masses_[w]);
    }
    double reach = 0.0;
    for (const auto& masses : class_masses_) {
      const auto r = std::min<std::size_t>(static_cast<std::size_t>(left), masses.size());
      for (std::size_t i = 0; i < r; ++i) reach += masses[i];
    }
    return reach;
  }

  void search(double covered, std::int64_t left) {
    best_ = std::max(best_, covered);
    if (left == 0 || best_ >= total_ - kMassSlack) return;
    const double bar = std::max(best_, floor_) + kMassSlack;
    if (covered + gain_reach(left) <= bar) return;
    if (covered + packing_reach(left) <= bar) return;

    // Heaviest coverable word; among equal masses the one in fewest balls.
    std::uint32_t word = 0;
    bool found = false;
    for (std::uint32_t w : by_mass_) {
      if (state_[w] != kFree || open_balls_[w] == 0) continue;
      if (found && masses_[w] < masses_[word]) break;
      if (!found || open_balls_[w] < open_balls_[word]) word = w;
      found = true;
    }
    if (!found) return;

    // Either some available ball covers `word`...
    std::vector<std::pair<double, std::uint32_t>> ranked;
    for (std::uint32_t b : balls_of_[word]) {
      if (available_[b]) ranked.emplace_back(gain(b), b);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::uint32_t> newly;
    for (const auto& [g, b] : ranked) {
      newly.clear();
      for (std::uint32_t w : balls_[b]) {
        if (state_[w] == kFree) {
          state_[w] = kCovered;
          newly.push_back(w);
        }
      }
      set_available(b, false);
      search(covered + g, left - 1);
      for (std::uint32_t w : newly) state_[w] = kFree;
      // b stays unavailable: later branches need not reuse it.
    }
    // ...or `word` stays uncovered for good.
    state_[word] = kSkipped;
    search(covered, left);
    state_[word] = kFree;
    for (const auto& entry : ranked) set_available(entry.second, true);
  }

  std::vector<double> masses_;
  std::vector<std::vector<std::uint32_t>> balls_;
  std::size_t stride_;
  std::vector<char> state_;
  std::vector<char> available_;
  std::vector<std::int32_t> open_balls_;  // available balls containing each word
  std::vector<std::vector<std::uint32_t>> balls_of_;
  std::vector<std::uint64_t> conflict_;
  std::vector<std::uint32_t> by_mass_;
  std::vector<std::uint64_t> class_union_;
  std::vector<std::vector<double>> class_masses_;
  std::vector<double> gains_;
  double total_ = 0.0;
  double best_ = 0.0;
  double floor_ = 0.0;
};

// Ball count of the greedy cover; an upper bound on the optimum.
std::int64_t greedy_cover(std::span<const double> masses,
                          const std::vector<std::vector<std::uint32_t>>& balls, double target) {
  std::vector<char> covered_word(masses.size(), 0);
  double covered = 0.0;
  std::int64_t used = 0;
  while (!(covered > target)) {
    double best_gain = 0.0;
    std::size_t pick = 0;
    for (std::size_t b = 0; b < balls.size(); ++b) {
      double g = 0.0;
      for (std::uint32_t w : balls[b]) {
        if (!covered_word[w]) g += masses[w];
      }
      if (g > best_gain) {
        best_gain = g;
        pick = b;
      }
    }
    if (best_gain == 0.0) break;
    for (std::uint32_t w : balls[pick]) covered_word[w] = 1;
    covered += best_gain;
    ++used;
  }
  return used;
}

std::int64_t solve_cover(std::span<const double> masses,
                         std::vector<std::vector<std::uint32_t>> balls, double epsilon) {
  const double target = 1.0 - epsilon;
  const std::int64_t upper = greedy_cover(masses, balls, target);

  // Words sharing a ball end up in one component.
  std::vector<std::uint32_t> parent(masses.size());
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t w) {
    while (parent[w] != w) w = parent[w] = parent[parent[w]];
    return w;
  };
  for (const auto& ball : balls) {
    for (std::uint32_t w : ball) parent[find(w)] = find(ball.front());
  }
  std::vector<std::int64_t> component_of(masses.size(), -1);
  std::vector<std::vector<std::uint32_t>> members;
  for (std::uint32_t w = 0; w < masses.size(); ++w) {
    const std::uint32_t root = find(w);
    if (component_of[root] < 0) {
      component_of[root] = static_cast<std::int64_t>(members.size());
      members.emplace_back();
    }
    members[static_cast<std::size_t>(component_of[root])].push_back(w);
  }
  std::vector<std::uint32_t> local(masses.size());
  std::vector<std::vector<std::vector<std::uint32_t>>> local_balls(members.size());
  std::vector<std::vector<double>> local_masses(members.size());
  for (std::size_t c = 0; c < members.size(); ++c) {
    for (std::uint32_t i = 0; i < members[c].size(); ++i) {
      local[members[c][i]] = i;
      local_masses[c].push_back(masses[members[c][i]]);
    }
  }
  for (auto& ball : balls) {
    const auto c = static_cast<std::size_t>(component_of[find(ball.front())]);
    for (auto& w : ball) w = local[w];
    local_balls[c].push_back(std::move(ball));
  }

  // reach[k]: largest mass k balls cover, built one component at a time.
  const double lost = -1.0;
  std::vector<double> reach(static_cast<std::size_t>(upper) + 1, lost);
  reach[0] = 0.0;
  double mass_left = std::accumulate(masses.begin(), masses.end(), 0.0);
  for (std::size_t c = 0; c < members.size(); ++c) {
    ComponentCover cover(std::move(local_masses[c]), std::move(local_balls[c]));
    mass_left -= cover.total();
    // Below this the component cannot help reach the target.
    const double floor = target - mass_left - reach.back();
    std::vector<double> curve{0.0};
    while (static_cast<std::int64_t>(curve.size()) <= upper &&
           curve.back() < cover.total() - kMassSlack) {
      curve.push_back(
          cover.max_cover(static_cast<std::int64_t>(curve.size()), curve.back(), floor));
    }
    std::vector<double> next(reach.size(), lost);
    for (std::size_t k = 0; k < reach.size(); ++k) {
      if (reach[k] == lost) continue;
      for (std::size_t j = 0; j < curve.size() && k + j < reach.size(); ++j) {
        next[k + j] = std::max(next[k + j], reach[k] + curve[j]);
      }
    }
    reach = std::move(next);
  }
  for (std::size_t k = 0; k < reach.size(); ++k) {
    if (reach[k] > target) return static_cast<std::int64_t>(k);
  }
  return upper;
}

// Drops repeated balls and balls contained in another one.
std::vector<std::vector<std::uint32_t>> maximal_balls(std::vector<std::vector<std::uint32_t>> balls) {
  std::sort(balls.begin(), balls.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
  std::vector<std::vector<std::uint32_t>> kept;
  for (auto& ball : balls) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const auto& big) {
      return big.size() > ball.size() &&
             std::includes(big.begin(), big.end(), ball.begin(), ball.end());
    });
    if (!dominated) kept.push_back(std::move(ball));
  }
  return kept;
}

std::int64_t cover_from_distance(std::span<const double> masses, double epsilon,
                                 const std::function<double(std::size_t, std::size_t)>& distance) {
  return min_ball_cover(
      masses,
      [&](std::size_t c, std::size_t w) { return distance(c, w) <= epsilon + kDistanceSlack; },
      epsilon);
}

}  // namespace

std::int64_t min_ball_cover(std::span<const double> masses,
                            const std::function<bool(std::size_t, std::size_t)>& within,
                            double epsilon) {
  require_epsilon(epsilon);
  if (masses.empty()) throw std::domain_error("no words to cover");
  std::vector<std::vector<std::uint32_t>> balls(masses.size());
  for (std::size_t c = 0; c < masses.size(); ++c) {
    for (std::size_t w = 0; w < masses.size(); ++w) {
      if (within(c, w)) balls[c].push_back(static_cast<std::uint32_t>(w));
    }
  }
  return solve_cover(masses, maximal_balls(std::move(balls)), epsilon);
}

std::int64_t k_exact_small(const SceneryModel& model, const OccupationField& field,
                           double epsilon) {
  require_epsilon(epsilon);
  const std::int64_t m = field.range_size();
  const std::int64_t count = word_count(model.alphabet_size(), m, std::int64_t{1} << 12);
  if (count < 0) throw std::domain_error("instance too large for exact K");
  std::vector<Symbol> symbols;
  const auto masses = word_masses(model, m, count, symbols);
  const double n = static_cast<double>(field.n);
  return cover_from_distance(masses, epsilon, [&](std::size_t a, std::size_t b) {
    std::int64_t weight = 0;
    for (std::int64_t i = 0; i < m; ++i) {
      if (symbols[a * m + i] != symbols[b * m + i]) weight += field.counts[i];
    }
    return static_cast<double>(weight) / n;
  });
}

std::int64_t k_exact_block_refinement(const SceneryModel& model, std::int64_t n,
                                      std::int64_t k, double epsilon) {
  require_epsilon(epsilon);
  if (n < 1 || k < 1) throw std::domain_error("n and k must be positive");
  const std::int64_t length = n + k - 1;
  const std::int64_t count = word_count(model.alphabet_size(), length, std::int64_t{1} << 12);
  if (count < 0) throw std::domain_error("instance too large for exact K");
  std::vector<Symbol> symbols;
  const auto masses = word_masses(model, length, count, symbols);
  return cover_from_distance(masses, epsilon, [&](std::size_t a, std::size_t b) {
    std::int64_t blocks = 0;
    for (std::int64_t j = 0; j < n; ++j) {
      for (std::int64_t i = j; i < j + k; ++i) {
        if (symbols[a * length + i] != symbols[b * length + i]) {
          ++blocks;
          break;
        }
      }
    }
    return static_cast<double>(blocks) / static_cast<double>(n);
  });
}

SandwichInterval sandwich(double log2_phi, double log2_q) {
  if (log2_phi < 0.0 || log2_q < 0.0) throw std::domain_error("sandwich inputs must be >= 0");
  return {std::max(log2_phi - log2_q, 0.0), log2_phi};
}

ComplexityEstimate estimate_complexity(const SceneryModel& model, const OccupationField& field,
                                       double epsilon) {
  ComplexityEstimate est;
  est.n = field.n;
  est.epsilon = epsilon;
  est.log2_phi = phi_estimate(model, field, epsilon);
  est.log2_q_upper = q_upper_bound(field.n, std::min(epsilon, 0.5),
                                   static_cast<std::int64_t>(model.alphabet_size()));
  est.log2_k = sandwich(est.log2_phi, est.log2_q_upper);
  return est;
}

}  // namespace rwrs
