// Copyright 2026 The steinexp Authors.
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

// Serial reference sweeps against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "steinexp/sweeps.hpp"

namespace {

using namespace steinexp;

template <auto Fn>
void BM_lemmas(benchmark::State& st) {
  const auto ns = even_range(2, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(ns, false));
}

template <auto Fn>
void BM_concentration(benchmark::State& st) {
  const auto ns = even_range(4, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(ns));
}

template <auto Fn>
void BM_binomial_tail(benchmark::State& st) {
  const auto ns = even_range(2, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(ns, 1e-15));
}

template <auto Fn>
void BM_kolmogorov(benchmark::State& st) {
  const std::vector<long> ns = {64, 128, 256, 512, 1024, 2048};
  for (auto _ : st) benchmark::DoNotOptimize(Fn(ns));
}

template <SoundnessReport (*Fn)(long, const std::vector<Rational>&)>
void BM_soundness(benchmark::State& st) {
  const auto grid = linear_grid(make_rational(1, 10), Rational(5), 50);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(st.range(0), grid));
}

BENCHMARK(BM_lemmas<serial::lemma_sweep>)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lemmas<parallel::lemma_sweep>)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_concentration<serial::concentration_sweep>)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_concentration<parallel::concentration_sweep>)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_binomial_tail<serial::binomial_tail_sweep>)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_binomial_tail<parallel::binomial_tail_sweep>)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kolmogorov<serial::kolmogorov_sweep>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kolmogorov<parallel::kolmogorov_sweep>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_soundness<serial::soundness_scan>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_soundness<parallel::soundness_scan>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
