// Copyright 2026 The ptr Authors
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

#include <numbers>

#include "ptr/dilation.hpp"
#include "ptr/markovianity.hpp"
#include "ptr/random.hpp"

namespace {

std::vector<double> grid(std::size_t steps) {
  std::vector<double> t;
  for (std::size_t i = 0; i <= steps; ++i) t.push_back(static_cast<double>(i));
  return t;
}

const ptr::OperationBasis& basis() {
  static const ptr::OperationBasis b = ptr::ic_basis(2);
  return b;
}

// Full tomographic sweep of the partial-swap model, 16^K sequences.
void BM_BuildPartialSwap(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const auto model = ptr::model_b2(std::numbers::pi / 4);
  ptr::BuildOptions opt;
  opt.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptr::build_process_tensor(model, grid(steps), basis(), opt));
  }
}
BENCHMARK(BM_BuildPartialSwap)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_BuildDephasing(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const auto model = ptr::model_b1(1.0, 1.0);
  ptr::BuildOptions opt;
  opt.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptr::build_process_tensor(model, grid(steps), basis(), opt));
  }
}
BENCHMARK(BM_BuildDephasing)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ApplyControls(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const auto pt = ptr::build_process_tensor(ptr::model_b2(0.7), grid(steps), basis());
  ptr::random::Rng rng(1);
  ptr::ControlSequence seq;
  for (std::size_t j = 0; j < steps; ++j) seq.slots.push_back(ptr::random::cptp_map(2, 2, rng));
  for (auto _ : state) benchmark::DoNotOptimize(ptr::apply(pt, seq));
}
BENCHMARK(BM_ApplyControls)->DenseRange(1, 3);

void BM_MarkovTest(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  ptr::random::Rng rng(2);
  std::vector<ptr::QuantumMap> maps;
  for (std::size_t j = 0; j < steps; ++j) maps.push_back(ptr::random::cptp_map(2, 2, rng));
  const auto pt = ptr::build_process_tensor(
      ptr::model_markov(maps, ptr::random::state(2, rng)), grid(steps), basis());
  const auto breaks = ptr::CausalBreak::ic_default(2);
  ptr::MarkovOptions opt;
  opt.workers = 1;
  opt.exhaustive = true;
  for (auto _ : state) benchmark::DoNotOptimize(ptr::markov_test(pt, basis(), breaks, opt));
}
BENCHMARK(BM_MarkovTest)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_NonMarkovianity(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const auto pt = ptr::build_process_tensor(ptr::model_b2(0.7), grid(steps), basis());
  for (auto _ : state) benchmark::DoNotOptimize(ptr::non_markovianity(pt));
}
BENCHMARK(BM_NonMarkovianity)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
