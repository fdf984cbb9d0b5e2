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

#include "rwrs/walk_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rwrs {
namespace {

void require_length(std::int64_t n) {
  if (n < 1) throw std::domain_error("walk length must be at least 1");
}

// Calls step() once per jump with the law's family resolved up front, so
// the per-step dispatch leaves the hot loop.
template <class Body>
void with_stepper(const JumpLaw& law, Rng& rng, Body body) {
  switch (law.family()) {
    case JumpFamily::lazy_nearest_neighbour: {
      const std::uint64_t threshold = law.lazy_threshold();
      body([&rng, threshold] {
        const std::uint64_t bits = rng();
        const auto moves = static_cast<std::int64_t>((bits >> 1) >= threshold);
        return moves * (static_cast<std::int64_t>(bits & 1U) * 2 - 1);
      });
      return;
    }
    case JumpFamily::pareto:
    case JumpFamily::unit_step:
      body([&rng, &law] { return sample_jump(law, rng); });
      return;
  }
}

// Fills positions S_0..S_{n-1}; returns {min, max}.
std::pair<std::int64_t, std::int64_t> fill_positions(const JumpLaw& law, std::int64_t n,
                                                     Rng& rng, std::int64_t* out) {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  out[0] = 0;
  with_stepper(law, rng, [&](auto step) {
    std::int64_t s = 0;
    for (std::int64_t j = 1; j < n; ++j) {
      s += step();
      out[j] = s;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  });
  return {lo, hi};
}

OccupationField count_positions(std::span<const std::int64_t> positions, std::int64_t lo,
                                std::int64_t hi) {
  OccupationField field;
  field.n = static_cast<std::int64_t>(positions.size());
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const auto dense_limit =
      std::max<std::uint64_t>(4 * positions.size(), std::uint64_t{1} << 20);
  if (span <= dense_limit) {
    std::vector<std::uint32_t> dense(span, 0);
    for (std::int64_t s : positions) ++dense[static_cast<std::size_t>(s - lo)];
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] == 0) continue;
      field.sites.push_back(lo + static_cast<std::int64_t>(i));
      field.counts.push_back(dense[i]);
    }
    return field;
  }
  std::vector<std::int64_t> sorted(positions.begin(), positions.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    field.sites.push_back(sorted[i]);
    field.counts.push_back(static_cast<std::int64_t>(j - i));
    i = j;
  }
  return field;
}

void require_sorted(std::span<const double> grid, const char* what) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::domain_error(std::string(what) + " must be sorted");
  }
}

}  // namespace

std::int64_t OccupationField::count(std::int64_t k) const noexcept {
  const auto it = std::lower_bound(sites.begin(), sites.end(), k);
  if (it == sites.end() || *it != k) return 0;
  return counts[static_cast<std::size_t>(it - sites.begin())];
}

std::int64_t OccupationField::max_count() const noexcept {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

WalkPath simulate_path(const JumpLaw& law, std::int64_t n, std::uint64_t seed) {
  require_length(n);
  WalkPath path{n, std::vector<std::int64_t>(static_cast<std::size_t>(n)), seed};
  Rng rng(seed);
  fill_positions(law, n, rng, path.positions.data());
  return path;
}

OccupationField occupation_field(const WalkPath& path) {
  if (path.positions.empty()) throw std::domain_error("empty walk path");
  const auto [lo, hi] = std::minmax_element(path.positions.begin(), path.positions.end());
  return count_positions(path.positions, *lo, *hi);
}

OccupationField simulate_occupation(const JumpLaw& law, std::int64_t n, std::uint64_t seed) {
  require_length(n);
  thread_local std::vector<std::int64_t> scratch;
  scratch.resize(static_cast<std::size_t>(n));
  Rng rng(seed);
  const auto [lo, hi] = fill_positions(law, n, rng, scratch.data());
  return count_positions(scratch, lo, hi);
}

std::int64_t simulate_endpoint(const JumpLaw& law, std::int64_t n, std::uint64_t seed) {
  if (n < 0) throw std::domain_error("walk length must be nonnegative");
  Rng rng(seed);
  std::int64_t s = 0;
  with_stepper(law, rng, [&](auto step) {
    for (std::int64_t j = 0; j < n; ++j) s += step();
  });
  return s;
}

HyperSet scaled_range(const OccupationField& field, double a_n) {
  if (!(a_n > 0.0)) throw std::domain_error("a_n must be positive");
  std::vector<double> points(field.sites.size());
  std::transform(field.sites.begin(), field.sites.end(), points.begin(),
                 [a_n](std::int64_t k) { return static_cast<double>(k) / a_n; });
  return HyperSet::from_points(points);
}

HyperSet filled_range(const OccupationField& field, double a_n) {
  if (!(a_n > 0.0)) throw std::domain_error("a_n must be positive");
  if (field.sites.empty()) throw std::domain_error("empty occupation field");
  std::vector<Interval> runs;
  std::int64_t start = field.sites.front();
  for (std::size_t i = 1; i <= field.sites.size(); ++i) {
    if (i < field.sites.size() && field.sites[i] == field.sites[i - 1] + 1) continue;
    runs.push_back({static_cast<double>(start) / a_n,
                    static_cast<double>(field.sites[i - 1]) / a_n});
    if (i < field.sites.size()) start = field.sites[i];
  }
  return HyperSet::from_intervals(std::move(runs));
}

double min_local_time_over(const OccupationField& field, const HyperSet& e, double a_n,
                           double abar_n) {
  if (!(a_n > 0.0) || !(abar_n > 0.0)) {
    throw std::domain_error("a_n and abar_n must be positive");
  }
  bool any_lattice_point = false;
  std::int64_t best = 0;
  bool have_best = false;
  for (const auto& iv : e.intervals()) {
    const auto k1 = static_cast<std::int64_t>(std::ceil(iv.lo * a_n));
    const auto k2 = static_cast<std::int64_t>(std::floor(iv.hi * a_n));
    if (k1 > k2) continue;
    any_lattice_point = true;
    const auto first = std::lower_bound(field.sites.begin(), field.sites.end(), k1);
    const auto last = std::upper_bound(first, field.sites.end(), k2);
    if (last - first != k2 - k1 + 1) {
      best = 0;
      have_best = true;
      continue;
    }
    const auto from = field.counts.begin() + (first - field.sites.begin());
    const auto to = field.counts.begin() + (last - field.sites.begin());
    const std::int64_t m = *std::min_element(from, to);
    best = have_best ? std::min(best, m) : m;
    have_best = true;
  }
  if (!any_lattice_point) throw std::domain_error("a_n E contains no lattice point");
  return static_cast<double>(best) / abar_n;
}

LocalTimeField local_time_field(const WalkPath& path, double a_n, double abar_n,
                                std::span<const double> t_grid,
                                std::span<const double> x_grid) {
  if (!(a_n > 0.0) || !(abar_n > 0.0)) {
    throw std::domain_error("a_n and abar_n must be positive");
  }
  require_sorted(t_grid, "t_grid");
  require_sorted(x_grid, "x_grid");
  if (!t_grid.empty() && (t_grid.front() < 0.0 || t_grid.back() > 1.0)) {
    throw std::domain_error("t_grid must lie in [0, 1]");
  }
  const auto& pos = path.positions;
  const auto n = static_cast<std::int64_t>(pos.size());

  std::vector<std::int64_t> sites(pos.begin(), pos.end());
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  const auto index_of = [&](std::int64_t k) -> std::ptrdiff_t {
    const auto it = std::lower_bound(sites.begin(), sites.end(), k);
    return (it != sites.end() && *it == k) ? it - sites.begin() : -1;
  };
  std::vector<std::ptrdiff_t> step_index(pos.size());
  for (std::size_t j = 0; j < pos.size(); ++j) step_index[j] = index_of(pos[j]);

  // Per x node: the two neighbouring sites and the weight of the upper one.
  struct Column {
    std::ptrdiff_t lower;
    std::ptrdiff_t upper;
    double weight;
  };
  std::vector<Column> columns;
  columns.reserve(x_grid.size());
  for (double x : x_grid) {
    const double y = a_n * x;
    const double fl = std::floor(y);
    const auto k = static_cast<std::int64_t>(fl);
    columns.push_back({index_of(k), index_of(k + 1), y - fl});
  }

  LocalTimeField out{{t_grid.begin(), t_grid.end()}, {x_grid.begin(), x_grid.end()}, {}};
  out.values.assign(t_grid.size() * x_grid.size(), 0.0);

  std::vector<std::int64_t> counts(sites.size(), 0);  // N_{m,.}
  std::int64_t m = 0;
  const auto site_count = [&](std::ptrdiff_t idx) -> double {
    return idx < 0 ? 0.0 : static_cast<double>(counts[static_cast<std::size_t>(idx)]);
  };
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    const double time = static_cast<double>(n) * t_grid[ti];
    auto target = std::min(static_cast<std::int64_t>(std::floor(time)), n);
    const double s = time - static_cast<double>(target);
    for (; m < target; ++m) ++counts[static_cast<std::size_t>(step_index[m])];
    // N_{m+1,k} - N_{m,k} = [S_m = k].
    const std::ptrdiff_t next = m < n ? step_index[m] : -1;
    for (std::size_t xi = 0; xi < columns.size(); ++xi) {
      const auto& c = columns[xi];
      const double lower = site_count(c.lower);
      const double upper = site_count(c.upper);
      const double lower_next = lower + ((s > 0.0 && c.lower >= 0 && c.lower == next) ? 1.0 : 0.0);
      const double upper_next = upper + ((s > 0.0 && c.upper >= 0 && c.upper == next) ? 1.0 : 0.0);
      const double w = c.weight;
      const double value = (1.0 - s) * (1.0 - w) * lower + s * (1.0 - w) * lower_next +
                           (1.0 - s) * w * upper + s * w * upper_next;
      out.values[ti * columns.size() + xi] = value / abar_n;
    }
  }
  return out;
}

}  // namespace rwrs
