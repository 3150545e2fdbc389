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

// cbdc: scenario runner, benchmarks, adversaries and fixture generation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cbdc/sim/adversary.h"
#include "cbdc/sim/bench.h"
#include "cbdc/sim/fixtures.h"
#include "cbdc/sim/scenario.h"

namespace {

using namespace cbdc;

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int fail(const Error& e) {
  std::cerr << "error: " << e.to_string() << "\n";
  return 2;
}

crypto::CryptoMode mode_or_toy(const std::string& name) {
  return crypto::parse_crypto_mode(name).value_or(crypto::CryptoMode::kToy);
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& report_path, const std::string& log_path) {
  auto config = sim::ScenarioConfig::load(config_path);
  if (!config.ok()) return fail(config.error());
  if (seed) config->seed = *seed;
  auto result = sim::run(*config);
  if (!result.ok()) return fail(result.error());
  const auto& report = result->report;
  if (!report_path.empty() && !write_file(report_path, report.to_json() + "\n")) {
    return fail(make_error(ErrorCode::kIoError, "cannot write " + report_path));
  }
  if (!log_path.empty() && !write_file(log_path, result->log.text())) {
    return fail(make_error(ErrorCode::kIoError, "cannot write " + log_path));
  }
  std::cout << report.summary();
  auto status = sim::scenario_status(report);
  if (!status.ok()) {
    std::cerr << "error: " << status.error().to_string() << "\n";
    return 1;
  }
  return 0;
}

int cmd_bench(std::size_t shards, double duration, const std::string& mode,
              int threads, std::size_t growth, const std::string& json_path) {
  sim::BenchConfig config;
  config.mode = mode_or_toy(mode);
  config.duration_s = duration;
  config.threads = threads;
  config.growth_deposits = growth;
  config.shard_counts.clear();
  for (std::size_t s = 1; s < shards; s *= 2) config.shard_counts.push_back(s);
  config.shard_counts.push_back(shards);
  auto report = sim::bench(config);
  if (!report.ok()) return fail(report.error());
  std::cout << report->table();
  if (!json_path.empty() && !write_file(json_path, report->to_json() + "\n")) {
    return fail(make_error(ErrorCode::kIoError, "cannot write " + json_path));
  }
  return 0;
}

int cmd_adversary(const std::string& name, int trials, int kappa,
                  std::uint64_t seed, const std::string& mode) {
  auto m = mode_or_toy(mode);
  if (name == "cheating-refresher") {
    auto r = sim::cheating_refresher(trials, kappa, seed, m);
    if (!r.ok()) return fail(r.error());
    double expected = 1.0 - 1.0 / kappa;
    std::cout << "adversary=cheating-refresher kappa=" << kappa
              << " trials=" << r->trials << " caught=" << r->caught
              << " rate=" << r->rate() << " expected=" << expected
              << " escaped_coins=" << r->escaped_coins << "\n";
    return 0;
  }
  if (name == "double-spend-race") {
    auto r = sim::double_spend_race(32, trials, seed, m);
    if (!r.ok()) return fail(r.error());
    std::cout << "adversary=double-spend-race depositors=32 repetitions="
              << r->repetitions << " accepted=" << r->accepted
              << " double_spend=" << r->double_spend << " other=" << r->other
              << " conservation_violations=" << r->conservation_violations
              << "\n";
    return r->conservation_violations ? 1 : 0;
  }
  if (name == "conspiring-merchant") {
    auto r = sim::conspiring_merchant(seed, m);
    if (!r.ok()) return fail(r.error());
    for (const auto& o : *r) {
      std::cout << "adversary=conspiring-merchant order="
                << (o.customer_first ? "customer-first" : "merchant-first")
                << " customer=" << error_code_name(o.customer_result)
                << " merchant=" << error_code_name(o.merchant_result)
                << " link_anonymous=" << (o.link_anonymous ? "yes" : "no")
                << "\n";
    }
    return 0;
  }
  return fail(make_error(ErrorCode::kConfigError, "unknown adversary " + name));
}

int cmd_fixtures(const std::string& out, std::uint64_t seed,
                 const std::string& mode) {
  auto msgs = sim::golden_messages(seed, mode_or_toy(mode));
  if (!msgs.ok()) return fail(msgs.error());
  auto st = sim::write_fixtures(*msgs, out);
  if (!st.ok()) return fail(st.error());
  for (const auto& [type, bytes] : *msgs) {
    std::cout << sim::fixture_file_name(type) << " " << bytes.size() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cbdc: blind-signature cash simulator"};
  app.require_subcommand(1);

  std::string config_path, report_path, log_path;
  std::optional<std::uint64_t> run_seed;
  auto* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("--config", config_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", run_seed, "Override the scenario seed");
  run->add_option("--report", report_path, "Write the JSON report here");
  run->add_option("--log", log_path, "Write the event log here");

  std::size_t shards = 4;
  double duration = 2.0;
  std::string bench_mode = "full";
  int threads = 0;
  std::size_t growth = 0;
  std::string bench_json;
  auto* bench = app.add_subcommand("bench", "Measure signing and deposits");
  bench->add_option("--shards", shards, "Largest shard count")
      ->check(CLI::Range(1, 64));
  bench->add_option("--duration", duration, "Seconds per measurement")
      ->check(CLI::PositiveNumber);
  bench->add_option("--mode", bench_mode, "toy or full")
      ->check(CLI::IsMember({"toy", "full"}));
  bench->add_option("--threads", threads, "Workers per run (default: shards)");
  bench->add_option("--growth", growth, "Toy deposits for the store growth run");
  bench->add_option("--json", bench_json, "Write the JSON report here");

  std::string adv_name, adv_mode = "toy";
  int trials = 3000, kappa = 3;
  std::uint64_t adv_seed = 1;
  auto* adv = app.add_subcommand("adversary", "Run an adversary");
  adv->add_option("--name", adv_name,
                  "cheating-refresher | double-spend-race | conspiring-merchant")
      ->required();
  adv->add_option("--trials", trials, "Trials or repetitions")
      ->check(CLI::PositiveNumber);
  adv->add_option("--kappa", kappa, "Refresh commitments")
      ->check(CLI::Range(1, 16));
  adv->add_option("--seed", adv_seed);
  adv->add_option("--mode", adv_mode)->check(CLI::IsMember({"toy", "full"}));

  std::string fx_out = "fixtures", fx_mode = "full";
  std::uint64_t fx_seed = 2026;
  auto* fx = app.add_subcommand("fixtures", "Write golden wire messages");
  fx->add_option("--out", fx_out, "Output directory");
  fx->add_option("--seed", fx_seed);
  fx->add_option("--mode", fx_mode)->check(CLI::IsMember({"toy", "full"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, run_seed, report_path, log_path);
    if (*bench) {
      return cmd_bench(shards, duration, bench_mode, threads, growth,
                       bench_json);
    }
    if (*adv) return cmd_adversary(adv_name, trials, kappa, adv_seed, adv_mode);
    if (*fx) return cmd_fixtures(fx_out, fx_seed, fx_mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
