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

// Walk paths, occupation counts N_{n,k}, ranges V_n, the min-local-time
// functional Y_{E,n}, and the bilinearly interpolated field L_{xi,n}.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwrs/hyperspace.hpp"
#include "rwrs/stable_laws.hpp"

namespace rwrs {

struct WalkPath {
  std::int64_t n = 0;
  std::vector<std::int64_t> positions;  // S_0 .. S_{n-1}
  std::uint64_t seed = 0;
};

/// Visit counts over the range, stored as parallel sorted arrays.
struct OccupationField {
  std::int64_t n = 0;
  std::vector<std::int64_t> sites;   // V_n, strictly increasing
  std::vector<std::int64_t> counts;  // N_{n,k} for k = sites[i]

  std::int64_t range_size() const noexcept { return static_cast<std::int64_t>(sites.size()); }
  /// N_{n,k}; zero off the range.
  std::int64_t count(std::int64_t k) const noexcept;
  std::int64_t max_count() const noexcept;
};

/// S_0 = 0 and n - 1 further partial sums, driven by an Rng seeded with
/// `seed`. Throws std::domain_error for n < 1.
WalkPath simulate_path(const JumpLaw& law, std::int64_t n, std::uint64_t seed);

OccupationField occupation_field(const WalkPath& path);

/// occupation_field(simulate_path(law, n, seed)) without keeping the path.
OccupationField simulate_occupation(const JumpLaw& law, std::int64_t n, std::uint64_t seed);

/// S_n: the sum of n jumps from an Rng seeded with `seed`.
std::int64_t simulate_endpoint(const JumpLaw& law, std::int64_t n, std::uint64_t seed);

/// {k / a_n : k in V_n} as degenerate intervals.
HyperSet scaled_range(const OccupationField& field, double a_n);

/// Like scaled_range, but each run of consecutive visited sites k1..k2
/// becomes the interval [k1 / a_n, k2 / a_n].
HyperSet filled_range(const OccupationField& field, double a_n);

/// Y_{E,n} = min{N_{n,k} : k / a_n in E} / abar_n, zero when some such site
/// is unvisited. Throws std::domain_error if a_n E holds no lattice point.
double min_local_time_over(const OccupationField& field, const HyperSet& e, double a_n,
                           double abar_n);

struct LocalTimeField {
  std::vector<double> t_grid;
  std::vector<double> x_grid;
  std::vector<double> values;  // row-major, t_grid.size() x x_grid.size()

  double at(std::size_t ti, std::size_t xi) const noexcept {
    return values[ti * x_grid.size() + xi];
  }
};

/// L(t, x) = Nhat(n t, a_n x) / abar_n on the grid, where Nhat interpolates
/// the prefix counts N_{m,k} bilinearly in (m, k). Throws std::domain_error
/// if a grid is unsorted or t leaves [0, 1].
LocalTimeField local_time_field(const WalkPath& path, double a_n, double abar_n,
                                std::span<const double> t_grid,
                                std::span<const double> x_grid);

}  // namespace rwrs
