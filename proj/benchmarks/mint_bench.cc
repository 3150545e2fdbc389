/*
 * Copyright 2026 The cbdc Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "cbdc/sim/bench.h"
#include "cbdc/store/sharded_store.h"
#include "cbdc/rng.h"

namespace {

using namespace cbdc;

// Deposit throughput at 1, 2 and 4 shards with one worker per shard.
void BM_DepositThroughput(benchmark::State& state) {
  sim::BenchConfig config;
  config.mode = state.range(1) ? crypto::CryptoMode::kFull
                               : crypto::CryptoMode::kToy;
  config.shard_counts = {static_cast<std::size_t>(state.range(0))};
  config.duration_s = 0.5;
  double rate = 0;
  for (auto _ : state) {
    auto r = sim::bench_deposits(config);
    if (!r.ok()) {
      state.SkipWithError(r.error().to_string().c_str());
      return;
    }
    rate = r->front().per_s;
  }
  state.counters["deposits_per_s"] = rate;
}
BENCHMARK(BM_DepositThroughput)
    ->ArgsProduct({{1, 2, 4}, {0, 1}})
    ->Iterations(1)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_StoreCas(benchmark::State& state) {
  auto store = store::ShardedStore::in_memory(
      static_cast<std::size_t>(state.range(0)));
  Drbg rng(3);
  std::vector<Bytes> keys;
  for (int i = 0; i < 4096; ++i) keys.push_back(rng.bytes(32));
  Bytes value(200, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    const Bytes& k = keys[i++ % keys.size()];
    auto& shard = store.shard_for(k);
    auto cur = shard.get(k);
    benchmark::DoNotOptimize(
        shard.compare_and_set(k, cur ? cur->version : 0, value));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StoreCas)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
