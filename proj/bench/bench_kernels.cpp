// Copyright 2026 The bplmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>

#include "bplmc/envelope.hpp"
#include "bplmc/samplers.hpp"

namespace {

bplmc::ChainConfig laplace_chain(std::size_t d, std::size_t iterations) {
  bplmc::Vec beta(d), m(d), w(d);
  for (std::size_t i = 0; i < d; ++i) {
    beta[i] = 2.0 * std::sqrt(static_cast<double>(d - i));
    w[i] = static_cast<double>(i + 1);
    m[i] = w[i] / 2.0;
  }
  bplmc::ChainConfig cfg(
      bplmc::SurrogatePotential(
          bplmc::CompositePotential(bplmc::SmoothTerm::zero(d), bplmc::NonsmoothTerm::weighted_l1(w)),
          bplmc::LegendreMap::weighted_quadratic(m), bplmc::Side::Left, 1e-5),
      bplmc::LegendreMap::hypentropy(beta));
  cfg.gamma = 5e-6;
  cfg.iterations = iterations;
  return cfg;
}

void BM_ReplicasParallel(benchmark::State& state) {
  const auto cfg = laplace_chain(100, 2000);
  for (auto _ : state) benchmark::DoNotOptimize(bplmc::run_replicas(cfg, static_cast<std::size_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2000);
}

void BM_ReplicasSerial(benchmark::State& state) {
  const auto cfg = laplace_chain(100, 2000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bplmc::run_replicas_serial(cfg, static_cast<std::size_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2000);
}

void BM_ProxHypentropyLeft(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  bplmc::Vec sigma(d, 2.0), w(d, 1.0), x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = std::sin(static_cast<double>(i));
  const bplmc::ProxPair pair(bplmc::LegendreMap::hypentropy(sigma), bplmc::NonsmoothTerm::weighted_l1(w),
                             bplmc::Side::Left, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(bplmc::prox(pair, x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d));
}

}  // namespace

BENCHMARK(BM_ReplicasParallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicasSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProxHypentropyLeft)->Arg(100)->Arg(10000);

BENCHMARK_MAIN();
