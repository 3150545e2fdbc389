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

#ifndef CBDC_SIM_SCENARIO_H_
#define CBDC_SIM_SCENARIO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/crypto/params.h"
#include "cbdc/sim/bus.h"
#include "cbdc/status.h"

namespace cbdc::sim {

struct DenominationConfig {
  Amount value;
  Amount refresh_fee;
};

// Known names: double-spender, cheating-refresher, stolen-key.
struct AdversarySpec {
  std::string name;
  int count = 1;
};

struct WorkloadConfig {
  int rounds = 3;
  Amount withdraw = Amount(2000);
  Amount payment_min = Amount(1);
  Amount payment_max = Amount(1500);
  double refresh_probability = 0.2;
};

struct ScenarioConfig {
  std::string name = "scenario";
  // workload | figures | revocation | conspiring-merchant
  std::string script = "workload";
  std::uint64_t seed = 1;
  crypto::CryptoMode mode = crypto::CryptoMode::kToy;
  std::size_t shards = 1;
  Timestamp start_time = 1'767'225'600;
  std::vector<DenominationConfig> denominations;
  std::int64_t withdraw_days = 365;
  std::int64_t deposit_days = 730;
  std::int64_t legal_days = 1095;
  int banks = 1;
  int customers = 1;
  int merchants = 1;
  Amount customer_balance = Amount(100'000);
  int kappa = 3;
  FaultModel faults;
  std::vector<AdversarySpec> adversaries;
  WorkloadConfig workload;

  static Result<ScenarioConfig> from_json(const std::string& text);
  static Result<ScenarioConfig> load(const std::string& path);
  std::string to_json() const;
  int adversary_count(const std::string& name) const;
};

struct LatencyStats {
  std::string op;
  std::size_t count = 0;
  std::int64_t p50_ms = 0;
  std::int64_t p90_ms = 0;
  std::int64_t p99_ms = 0;
  std::int64_t max_ms = 0;
};

struct MetricsReport {
  std::string name;
  std::string script;
  std::uint64_t seed = 0;
  bool green = false;
  std::string first_violation;
  std::vector<std::string> violations;

  std::vector<LatencyStats> latency;
  std::int64_t virtual_ms = 0;
  std::uint64_t operations = 0;
  // Completed operations per simulated second.
  double throughput = 0;

  std::uint64_t withdrawals = 0;
  std::uint64_t withdrawal_failures = 0;
  std::uint64_t payments_delivered = 0;
  std::uint64_t payments_failed = 0;
  std::uint64_t payments_skipped = 0;
  std::uint64_t refreshes = 0;
  std::uint64_t refunds = 0;
  Amount refunded;
  std::uint64_t double_spend_attempts = 0;
  std::uint64_t double_spend_rejections = 0;
  std::uint64_t cheat_attempts = 0;
  std::uint64_t forfeits = 0;
  std::uint64_t forged_accepted = 0;
  Amount forged_value;

  std::size_t store_records = 0;
  std::size_t store_bytes = 0;
  BusStats bus;

  Amount customer_debits;
  Amount merchant_credits;
  std::vector<std::string> steps;
  // SHA-256 over every account balance, in a fixed order.
  std::string balances_digest;

  std::string to_json() const;
  std::string summary() const;
};

struct ScenarioResult {
  MetricsReport report;
  EventLog log;
};

// Runs the configured script on a fresh deployment over the simulated bus.
// Setup problems are errors; invariant violations leave green unset and
// name the first one in the report.
Result<ScenarioResult> run(const ScenarioConfig& config);

// ScenarioError carrying the first violation, or Ok for a green report.
Status scenario_status(const MetricsReport& report);

}  // namespace cbdc::sim

#endif  // CBDC_SIM_SCENARIO_H_
