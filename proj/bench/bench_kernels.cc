// Copyright 2026 The Friendlab Authors.
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

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "friendlab/loop.h"
#include "friendlab/theory.h"

namespace {

using namespace friendlab;

struct PoolFixture {
  LinearModel model_a, model_b;
  std::vector<Instance> pool;
};

const PoolFixture& fixture() {
  static const PoolFixture f = [] {
    const WorldConfig w;
    const auto labeled = generate_corpus(1, 100, w);
    TrainConfig cfg;
    cfg.learning_rate = 0.5;
    PoolFixture out;
    out.model_a = train_epochs(make_model(Task::kA, w), gold_examples_a(labeled), {}, cfg, 20, 1)
                      .model;
    out.model_b = train_epochs(make_model(Task::kB, w), gold_examples_b(labeled), {}, cfg, 20, 2)
                      .model;
    out.pool = generate_corpus(2, 2000, w);
    return out;
  }();
  return f;
}

void BM_LabelPool(benchmark::State& state) {
  const PoolFixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(label_pool(f.model_a, f.model_b, f.pool, SelectorConfig{}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.pool.size()));
}

void BM_LabelPoolSerial(benchmark::State& state) {
  const PoolFixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(label_pool_serial(f.model_a, f.model_b, f.pool, SelectorConfig{}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.pool.size()));
}

void BM_MonteCarlo(benchmark::State& state) {
  const TheoryParams p{0.7, 0.8, 50};
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo(p, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const TheoryParams p{0.7, 0.8, 50};
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_serial(p, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_LabelPool)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LabelPoolSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
