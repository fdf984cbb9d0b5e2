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
#include <map>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "testing_laws.hpp"

namespace rwrs {
namespace {

OccupationField field_of(std::map<std::int64_t, std::int64_t> counts) {
  OccupationField f;
  for (const auto& [k, c] : counts) {
    f.sites.push_back(k);
    f.counts.push_back(c);
    f.n += c;
  }
  return f;
}

TEST(SimulatePath, SingleStep) {
  const WalkPath path = simulate_path(make_lazy_gaussian_jump(0.5), 1, 3);
  EXPECT_EQ(path.positions, std::vector<std::int64_t>{0});
  EXPECT_THROW(simulate_path(make_lazy_gaussian_jump(0.5), 0, 3), std::domain_error);
}

TEST(SimulatePath, Deterministic) {
  const JumpLaw law = make_pareto_jump(1.5, 0.2);
  EXPECT_EQ(simulate_path(law, 5000, 8).positions, simulate_path(law, 5000, 8).positions);
  EXPECT_NE(simulate_path(law, 5000, 8).positions, simulate_path(law, 5000, 9).positions);
}

TEST(SimulatePath, IncrementsInSupport) {
  const WalkPath path = simulate_path(make_lazy_gaussian_jump(0.3), 10000, 4);
  EXPECT_EQ(path.positions.front(), 0);
  for (std::size_t j = 1; j < path.positions.size(); ++j) {
    ASSERT_LE(std::abs(path.positions[j] - path.positions[j - 1]), 1);
  }
}

TEST(SimulatePath, CentredEndpoint) {
  const JumpLaw law = make_lazy_gaussian_jump(0.5);
  const std::int64_t n = 100000;
  const int trials = 1000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    sum += static_cast<double>(simulate_endpoint(law, n, stream_seed(3, t, Stream::walk)));
  }
  EXPECT_LT(std::abs(sum / trials), 4.0 * std::sqrt(0.5 * n) / std::sqrt(trials));
}

TEST(SimulateEndpoint, MatchesPathPlusOneStep) {
  const JumpLaw law = make_pareto_jump(1.7, 0.3);
  const WalkPath path = simulate_path(law, 101, 77);
  // The path holds S_0..S_100; the endpoint of 100 jumps is S_100.
  EXPECT_EQ(simulate_endpoint(law, 100, 77), path.positions.back());
}

TEST(OccupationField, HandCount) {
  WalkPath path;
  path.n = 3;
  path.positions = {0, 1, 0};
  const OccupationField f = occupation_field(path);
  EXPECT_EQ(f.sites, (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(f.counts, (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(f.count(0), 2);
  EXPECT_EQ(f.count(5), 0);
  EXPECT_EQ(f.max_count(), 2);
}

TEST(OccupationField, UnitStep) {
  const OccupationField f = simulate_occupation(testing::make_unit_step_jump(), 5, 1);
  EXPECT_EQ(f.sites, (std::vector<std::int64_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(f.counts, (std::vector<std::int64_t>(5, 1)));
}

TEST(OccupationField, ConservationAndRange) {
  for (const JumpLaw& law : {make_lazy_gaussian_jump(0.5), make_pareto_jump(1.2, 0.1)}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const std::int64_t n = 1 + static_cast<std::int64_t>(seed) * 997;
      const OccupationField f = simulate_occupation(law, n, seed);
      std::int64_t total = 0;
      for (std::int64_t c : f.counts) {
        ASSERT_GT(c, 0);
        total += c;
      }
      EXPECT_EQ(total, n);
      EXPECT_EQ(f.n, n);
      EXPECT_LE(f.range_size(), n);
      EXPECT_GT(f.count(0), 0);
      EXPECT_TRUE(std::is_sorted(f.sites.begin(), f.sites.end()));
      EXPECT_EQ(std::adjacent_find(f.sites.begin(), f.sites.end()), f.sites.end());
    }
  }
}

TEST(OccupationField, FastPathMatchesPath) {
  // Pareto walks spread far enough to take the sparse branch.
  for (const JumpLaw& law : {make_lazy_gaussian_jump(0.4), make_pareto_jump(1.1, 0.2)}) {
    const OccupationField a = simulate_occupation(law, 50000, 6);
    const OccupationField b = occupation_field(simulate_path(law, 50000, 6));
    EXPECT_EQ(a.sites, b.sites);
    EXPECT_EQ(a.counts, b.counts);
  }
}

TEST(ScaledRange, Arithmetic) {
  EXPECT_EQ(scaled_range(field_of({{0, 1}, {1, 1}}), 2.0), HyperSet::from_points(std::vector{0.0, 0.5}));
  EXPECT_EQ(scaled_range(field_of({{0, 4}}), 13.0), HyperSet::point(0.0));
  EXPECT_EQ(scaled_range(field_of({{-3, 1}, {0, 1}, {3, 1}}), 3.0),
            HyperSet::from_points(std::vector{-1.0, 0.0, 1.0}));
}

TEST(FilledRange, JoinsRuns) {
  const OccupationField f = field_of({{-2, 1}, {-1, 1}, {0, 3}, {4, 1}, {5, 2}, {9, 1}});
  const HyperSet expected = HyperSet::from_intervals({{-0.5, 0.0}, {1.0, 1.25}, {2.25, 2.25}});
  EXPECT_EQ(filled_range(f, 4.0), expected);
}

TEST(MinLocalTime, HandComputation) {
  const OccupationField f = field_of({{0, 2}, {1, 1}});
  EXPECT_DOUBLE_EQ(min_local_time_over(f, HyperSet::interval(-0.1, 0.1), 1.0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(min_local_time_over(f, HyperSet::interval(0.0, 1.0), 1.0, 2.0), 0.5);
}

TEST(MinLocalTime, UnvisitedLatticePoint) {
  const OccupationField f = field_of({{0, 2}, {1, 1}});
  EXPECT_EQ(min_local_time_over(f, HyperSet::interval(2.5, 3.5), 1.0, 1.0), 0.0);
  EXPECT_EQ(min_local_time_over(f, HyperSet::interval(0.0, 2.0), 1.0, 1.0), 0.0);
  EXPECT_THROW(min_local_time_over(f, HyperSet::interval(0.2, 0.8), 1.0, 1.0), std::domain_error);
}

TEST(MinLocalTime, MonotoneInSet) {
  const JumpLaw law = make_lazy_gaussian_jump(0.5);
  const std::int64_t n = 20000;
  const double a = normalizing_constant(law, n);
  const double abar = integrated_normalizer(law, n);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const OccupationField f = simulate_occupation(law, n, seed);
    const double small = min_local_time_over(f, HyperSet::interval(-0.2, 0.2), a, abar);
    const double big = min_local_time_over(f, HyperSet::interval(-0.6, 0.4), a, abar);
    const double point = min_local_time_over(f, HyperSet::point(0.0), a, abar);
    EXPECT_GE(small, big);
    EXPECT_GE(point, small);
    EXPECT_DOUBLE_EQ(point, static_cast<double>(f.count(0)) / abar);
  }
}

// N_{m,k} by direct counting, interpolated in (m, k).
double naive_local_time(const WalkPath& path, double t, double x, double a_n) {
  const auto n = static_cast<double>(path.positions.size());
  const auto visits = [&](std::int64_t m, std::int64_t k) {
    std::int64_t c = 0;
    for (std::int64_t j = 0; j < m; ++j) c += path.positions[static_cast<std::size_t>(j)] == k;
    return static_cast<double>(c);
  };
  const double time = n * t;
  const auto m = static_cast<std::int64_t>(std::floor(time));
  const double s = time - static_cast<double>(m);
  const double y = a_n * x;
  const auto k = static_cast<std::int64_t>(std::floor(y));
  const double w = y - static_cast<double>(k);
  const auto mn = std::min<std::int64_t>(m + 1, static_cast<std::int64_t>(n));
  return (1 - s) * (1 - w) * visits(m, k) + s * (1 - w) * visits(mn, k) +
         (1 - s) * w * visits(m, k + 1) + s * w * visits(mn, k + 1);
}

TEST(LocalTimeField, MatchesDirectCounting) {
  const JumpLaw law = make_lazy_gaussian_jump(0.5);
  const WalkPath path = simulate_path(law, 400, 21);
  const double a = normalizing_constant(law, 400);
  const double abar = integrated_normalizer(law, 400);
  const std::vector<double> ts{0.0, 0.013, 0.25, 0.5, 0.731, 1.0};
  std::vector<double> xs;
  for (double x = -1.5; x <= 1.5; x += 0.0731) xs.push_back(x);
  const LocalTimeField field = local_time_field(path, a, abar, ts, xs);
  for (std::size_t ti = 0; ti < ts.size(); ++ti) {
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      EXPECT_NEAR(field.at(ti, xi), naive_local_time(path, ts[ti], xs[xi], a) / abar, 1e-12);
    }
  }
}

TEST(LocalTimeField, StartsAtZeroAndGrows) {
  const JumpLaw law = make_pareto_jump(1.5, 0.2);
  const WalkPath path = simulate_path(law, 3000, 5);
  const double a = normalizing_constant(law, 3000);
  std::vector<double> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back(i / 40.0);
  std::vector<double> xs;
  for (double x = -2.0; x <= 2.0; x += 0.01) xs.push_back(x);
  const LocalTimeField field = local_time_field(path, a, 1.0, ts, xs);
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    EXPECT_EQ(field.at(0, xi), 0.0);
    for (std::size_t ti = 1; ti < ts.size(); ++ti) {
      ASSERT_GE(field.at(ti, xi), field.at(ti - 1, xi) - 1e-12);
    }
  }
}

TEST(LocalTimeField, SupAtLatticeNodes) {
  const JumpLaw law = make_lazy_gaussian_jump(0.5);
  const WalkPath path = simulate_path(law, 2000, 9);
  const OccupationField f = occupation_field(path);
  const double a = 4.0;
  std::vector<double> xs;
  for (std::int64_t k = f.sites.front(); k <= f.sites.back(); ++k) xs.push_back(k / a);
  const std::vector<double> ts{1.0};
  const LocalTimeField field = local_time_field(path, a, 2.5, ts, xs);
  EXPECT_DOUBLE_EQ(*std::max_element(field.values.begin(), field.values.end()),
                   static_cast<double>(f.max_count()) / 2.5);
}

TEST(LocalTimeField, RejectsBadGrids) {
  const WalkPath path = simulate_path(make_lazy_gaussian_jump(0.5), 10, 1);
  const std::vector<double> xs{0.0};
  EXPECT_THROW(local_time_field(path, 1.0, 1.0, std::vector{0.5, 0.2}, xs), std::domain_error);
  EXPECT_THROW(local_time_field(path, 1.0, 1.0, std::vector{0.5, 1.2}, xs), std::domain_error);
}

}  // namespace
}  // namespace rwrs
