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

#ifndef CBDC_SIM_BENCH_H_
#define CBDC_SIM_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cbdc/crypto/params.h"
#include "cbdc/status.h"

namespace cbdc::sim {

struct BenchConfig {
  crypto::CryptoMode mode = crypto::CryptoMode::kFull;
  std::vector<std::size_t> shard_counts = {1, 2, 4};
  // Per measurement.
  double duration_s = 2.0;
  // Worker threads per run; 0 means one per shard.
  int threads = 0;
  // Deposits for the store growth run; 0 skips it.
  std::size_t growth_deposits = 0;
  std::uint64_t seed = 1;
};

struct SignBench {
  std::size_t rsa_bits = 0;
  std::uint64_t signs = 0;
  double sign_per_s = 0;
  double verify_per_s = 0;
  double coin_verify_per_s = 0;
};

struct DepositBench {
  std::size_t shards = 0;
  int threads = 0;
  std::uint64_t deposits = 0;
  double seconds = 0;
  double per_s = 0;
  std::size_t records = 0;
  std::size_t bytes = 0;
};

struct GrowthPoint {
  std::size_t deposits = 0;
  std::size_t records = 0;
  std::size_t bytes = 0;
};

struct BenchReport {
  std::string mode;
  unsigned hardware_threads = 0;
  std::string cpu;
  SignBench sign;
  std::vector<DepositBench> deposits;
  std::vector<GrowthPoint> growth;

  // Deposit rate strictly rises along the shard counts measured.
  bool deposits_scale() const;
  std::string to_json() const;
  std::string table() const;
};

// Single-thread blind_sign, verify and coin signature verify rates.
SignBench bench_signing(crypto::CryptoMode mode, double duration_s,
                        std::uint64_t seed);

Result<std::vector<DepositBench>> bench_deposits(const BenchConfig& config);

// Deposits `n` fresh coins in toy mode, sampling the store ten times.
Result<std::vector<GrowthPoint>> bench_store_growth(std::size_t n,
                                                   std::uint64_t seed);

Result<BenchReport> bench(const BenchConfig& config);

std::string cpu_model();

}  // namespace cbdc::sim

#endif  // CBDC_SIM_BENCH_H_
