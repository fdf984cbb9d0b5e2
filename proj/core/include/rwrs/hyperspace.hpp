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

// Closed bounded subsets of the line, the Hausdorff metric between them,
// dyadic inner/outer approximations, and (N, E)-admissible pairs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rwrs {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Nonempty finite union of disjoint closed intervals, sorted. Points are
/// degenerate intervals.
class HyperSet {
 public:
  /// Sorts and merges overlapping or touching intervals. Throws
  /// std::domain_error on an empty list, a reversed interval, or a
  /// non-finite endpoint.
  static HyperSet from_intervals(std::vector<Interval> intervals);
  static HyperSet from_points(std::span<const double> points);
  static HyperSet interval(double lo, double hi) { return from_intervals({{lo, hi}}); }
  static HyperSet point(double x) { return from_intervals({{x, x}}); }

  std::span<const Interval> intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  double min() const noexcept { return intervals_.front().lo; }
  double max() const noexcept { return intervals_.back().hi; }
  double lebesgue() const noexcept;
  bool contains(double x) const noexcept;
  /// Distance from x to the nearest point of the set.
  double distance_to(double x) const noexcept;
  HyperSet scaled(double factor) const;

  friend bool operator==(const HyperSet&, const HyperSet&) = default;

 private:
  HyperSet() = default;
  std::vector<Interval> intervals_;
};

/// inf{r > 0 : A in N(B, r) and B in N(A, r)}, computed exactly from the
/// interval endpoints.
double hausdorff_distance(const HyperSet& a, const HyperSet& b);

enum class Openness { closed, open };

/// Union of order-kappa cells [p/2^kappa, (p+1)/2^kappa], or its interior.
struct DyadicSet {
  int kappa = 0;
  std::vector<std::int64_t> cells;  // sorted, distinct
  Openness openness = Openness::closed;

  bool empty() const noexcept { return cells.empty(); }
  double lebesgue() const noexcept;
  double cell_width() const noexcept;
  /// Whether x belongs to the set (respecting openness).
  bool contains(double x) const noexcept;
  /// The closed union as a HyperSet (cells merged). Requires !empty().
  HyperSet closure() const;

  friend bool operator==(const DyadicSet&, const DyadicSet&) = default;
  friend auto operator<=>(const DyadicSet&, const DyadicSet&) = default;
};

/// C_kappa(E): the largest closed dyadic set of order kappa inside the
/// interior of E. May be empty.
DyadicSet dyadic_inner(const HyperSet& e, int kappa);

/// U_kappa(E): the smallest open dyadic set of order kappa containing E,
/// i.e. the interior of the union of all cells meeting E. Never empty.
DyadicSet dyadic_outer(const HyperSet& e, int kappa);

/// H(t) = -t log t - (1-t) log(1-t) in nats, H(0) = H(1) = 0. Throws
/// std::domain_error outside [0, 1].
double binary_entropy(double t);

struct AdmissiblePair {
  DyadicSet gamma;    // closed
  DyadicSet upsilon;  // open
  int kappa = 0;
  double mu = 0.0;  // Leb(upsilon \ gamma)
  double M = 0.0;   // Leb(upsilon)
  int alphabet_size = 0;
  double threshold = 0.0;
  bool admissible = false;
};

/// Evaluates (i) mu < E and (ii) M H(3 mu) + 3 mu log N < E (natural logs).
/// Pairs with 3 mu > 1 are not admissible. Containment gamma in upsilon is
/// checked on cells; throws std::domain_error if it fails or the orders
/// differ.
AdmissiblePair is_admissible(const DyadicSet& gamma, const DyadicSet& upsilon,
                             int alphabet_size, double threshold);

/// One (C_kappa, U_kappa) signature class of a sample collection.
struct SignatureClass {
  AdmissiblePair pair;
  std::vector<std::size_t> members;  // indices into the sample list
};

struct Lemma4Cover {
  int kappa = 0;
  std::vector<SignatureClass> classes;  // every signature seen, admissible or not
  double coverage = 0.0;                // fraction of samples in admissible classes
};

/// Groups samples by (C_kappa(E), U_kappa(E)) and evaluates admissibility
/// of each class.
Lemma4Cover lemma4_cover(std::span<const HyperSet> samples, int kappa, int alphabet_size,
                         double threshold);

/// Smallest kappa in [0, kappa_cap] whose admissible coverage reaches
/// `target`; returns the kappa_cap cover when none does.
Lemma4Cover lemma4_cover_auto(std::span<const HyperSet> samples, int alphabet_size,
                              double threshold, int kappa_cap = 8, double target = 0.9);

}  // namespace rwrs
