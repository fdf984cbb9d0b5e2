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


#include <benchmark/benchmark.h>

#include "rwrs/complexity.hpp"

namespace {

using namespace rwrs;

OccupationField line_field(std::int64_t sites) {
  OccupationField field;
  for (std::int64_t k = 0; k < sites; ++k) {
    field.sites.push_back(k);
    field.counts.push_back(1 + k % 3);
    field.n += field.counts.back();
  }
  return field;
}

void BM_PhiForSize(benchmark::State& state) {
  const SceneryModel model = make_bernoulli_scenery({0.8, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(log2_phi_for_size(model, state.range(0), 0.1));
  }
}
BENCHMARK(BM_PhiForSize)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_PhiForSizeTernary(benchmark::State& state) {
  const SceneryModel model = make_bernoulli_scenery({0.7, 0.2, 0.1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(log2_phi_for_size(model, state.range(0), 0.1));
  }
}
BENCHMARK(BM_PhiForSizeTernary)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_KExact(benchmark::State& state) {
  const SceneryModel model = make_bernoulli_scenery({0.7, 0.3});
  const OccupationField field = line_field(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k_exact_small(model, field, 0.2));
}
BENCHMARK(BM_KExact)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
