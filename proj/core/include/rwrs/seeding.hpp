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

// Seed derivation shared by every stochastic routine.
//
// All randomness flows from a 64-bit master seed through `stream_seed`, so a
// trial's walk and scenery are pure functions of (master seed, trial index).
// The derivation is fixed bit-for-bit:
//
//   mix64(x)  = splitmix64 finalizer applied to x + 0x9E3779B97F4A7C15
//   stream_seed(master, index, tag)
//             = mix64(mix64(master ^ mix64(tag)) + index)
//
// and each trial engine is `std::mt19937_64` constructed from that value.

#pragma once

#include <cstdint>
#include <random>

namespace rwrs {

using Rng = std::mt19937_64;

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class Stream : std::uint64_t {
  walk = 1,
  scenery = 2,
  reference = 3,
};

constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index,
                                    Stream tag) noexcept {
  return mix64(mix64(master ^ mix64(static_cast<std::uint64_t>(tag))) + index);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1); never returns an endpoint.
constexpr double to_open_unit(std::uint64_t x) noexcept {
  return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52;
}

/// Worker count for trial-parallel loops: hardware concurrency, capped by
/// RWRS_THREADS when that is set to a positive integer.
unsigned worker_count();

}  // namespace rwrs
