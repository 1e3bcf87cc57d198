// Copyright 2026 The combcert Authors
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

#include "combcert/channel.hpp"
#include "combcert/comb.hpp"
#include "combcert/hard_instance.hpp"
#include "combcert/linalg.hpp"
#include "combcert/random.hpp"
#include "combcert/twirl.hpp"

namespace {

using namespace combcert;

void BM_HermEig(benchmark::State& state) {
  Rng rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix h = random_hermitian(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig)->RangeMultiplier(2)->Range(8, 256);

void BM_JacobiEig(benchmark::State& state) {
  Rng rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix h = random_hermitian(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eig(h));
}
BENCHMARK(BM_JacobiEig)->RangeMultiplier(2)->Range(8, 64);

void BM_LinkProduct(benchmark::State& state) {
  Rng rng(2);
  const auto d = static_cast<std::size_t>(state.range(0));
  const Channel e1 = random_channel(d, d, 2, rng);
  const Channel e2 = random_channel(d, d, 2, rng);
  const LabeledOperator c1 = choi_from_kraus(e1, "B", "A");
  const LabeledOperator c2 = choi_from_kraus(e2, "C", "B");
  for (auto _ : state) benchmark::DoNotOptimize(link_product(c2, c1));
}
BENCHMARK(BM_LinkProduct)->DenseRange(2, 8, 2);

void BM_WeingartenTwirl(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HardInstanceSpec spec = sample_hard_instance(1, 3, 0.1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(weingarten_twirl(n, n, spec));
}
BENCHMARK(BM_WeingartenTwirl)->DenseRange(1, 3);

void BM_CommutantProjector(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const HardInstanceSpec spec = sample_hard_instance(1, 3, 0.1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hard_commutant(spec, n, 4));
}
BENCHMARK(BM_CommutantProjector)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
