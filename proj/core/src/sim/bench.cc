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

#include "cbdc/sim/bench.h"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "cbdc/mint/mint.h"
#include "cbdc/sim/deployment.h"
#include "json.hpp"

namespace cbdc::sim {

namespace {

using Clock = std::chrono::steady_clock;

constexpr Timestamp kEpoch = 1'767'225'600;
constexpr char kBank[] = "bank-0";

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Fixture {
  ManualClock clock{kEpoch};
  std::unique_ptr<mint::Mint> mint;
  const mint::DenominationKey* key = nullptr;
  crypto::GroupParams group;
};

Result<std::unique_ptr<Fixture>> make_fixture(crypto::CryptoMode mode,
                                              std::size_t shards,
                                              std::uint64_t seed) {
  auto f = std::make_unique<Fixture>();
  Drbg rng = Drbg(seed).fork("bench-keys");
  CBDC_ASSIGN_OR_RETURN(
      auto registry,
      mint::DenominationRegistry::setup(make_schedule({Amount(1000)}, kEpoch),
                                        crypto::crypto_profile(mode), rng));
  f->group = registry.group();
  f->mint = std::make_unique<mint::Mint>(
      std::move(registry), store::ShardedStore::in_memory(shards),
      std::make_unique<store::InMemoryKvStore>(), f->clock);
  auto bank_key = crypto::group_keygen(f->group, rng);
  CBDC_RETURN_IF_ERROR(
      f->mint->register_bank(kBank, bank_key.pub, Amount(1'000'000'000)));
  f->key = &f->mint->registry().keys().front();
  return f;
}

// Deposit requests for coins signed directly with the denomination key.
std::vector<wire::DepositReq> make_deposits(const Fixture& f, std::size_t n,
                                            Drbg& rng) {
  const auto& pub = f.key->info.pub;
  std::vector<wire::DepositReq> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto kp = crypto::group_keygen(f.group, rng);
    wire::DepositReq r;
    r.coin_pub = crypto::encode_element(f.group, kp.pub);
    r.denom_id = f.key->info.id;
    r.denom_sig = crypto::to_fixed_bytes(
        crypto::rsa_sign(f.key->priv, crypto::fdh(pub.n, r.coin_pub)),
        pub.width());
    r.amount = f.key->info.value;
    r.contract_hash = rng.hash256();
    r.merchant_bank = kBank;
    r.merchant_id = "merchant-0";
    r.coin_sig = crypto::coin_sign(kp.priv,
                                   wire::deposit_payload(r.contract_hash,
                                                         r.merchant_bank,
                                                         r.merchant_id, r.amount),
                                   f.group, rng)
                     .encode(f.group);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto pos = line.find(':');
      if (pos != std::string::npos) return line.substr(pos + 2);
    }
  }
  return "unknown";
}

SignBench bench_signing(crypto::CryptoMode mode, double duration_s,
                        std::uint64_t seed) {
  const auto& profile = crypto::crypto_profile(mode);
  Drbg rng = Drbg(seed).fork("bench-sign");
  auto key = crypto::rsa_keygen(profile.rsa_bits, profile.rsa_e, rng);
  SignBench out;
  if (!key.ok()) return out;
  const auto& pub = key->pub;
  out.rsa_bits = profile.rsa_bits;

  std::vector<crypto::BigInt> inputs;
  for (int i = 0; i < 64; ++i) {
    auto b = crypto::sample_blinding(pub.n, rng);
    inputs.push_back(crypto::blind(crypto::fdh(pub.n, rng.bytes(32)), b, pub));
  }
  std::vector<crypto::BigInt> sigs(inputs.size());
  auto t0 = Clock::now();
  std::uint64_t n = 0;
  do {
    for (std::size_t i = 0; i < inputs.size(); ++i, ++n) {
      sigs[i] = crypto::blind_sign(key->priv, inputs[i]);
    }
  } while (seconds_since(t0) < duration_s);
  out.signs = n;
  out.sign_per_s = n / seconds_since(t0);

  t0 = Clock::now();
  n = 0;
  do {
    for (std::size_t i = 0; i < inputs.size(); ++i, ++n) {
      if (!crypto::rsa_verify(pub, inputs[i], sigs[i])) return out;
    }
  } while (seconds_since(t0) < duration_s / 2);
  out.verify_per_s = n / seconds_since(t0);

  auto kp = crypto::group_keygen(profile.group, rng);
  Bytes msg = rng.bytes(64);
  Bytes sig = crypto::coin_sign(kp.priv, msg, profile.group, rng)
                  .encode(profile.group);
  t0 = Clock::now();
  n = 0;
  do {
    for (int i = 0; i < 16; ++i, ++n) {
      if (!crypto::coin_sig_verify(kp.pub, msg, sig, profile.group)) return out;
    }
  } while (seconds_since(t0) < duration_s / 2);
  out.coin_verify_per_s = n / seconds_since(t0);
  return out;
}

Result<std::vector<DepositBench>> bench_deposits(const BenchConfig& config) {
  std::vector<DepositBench> out;
  // Calibrate the pool from a short single-thread run.
  double rate = 0;
  {
    CBDC_ASSIGN_OR_RETURN(auto f, make_fixture(config.mode, 1, config.seed));
    Drbg rng = Drbg(config.seed).fork("calibrate");
    auto reqs = make_deposits(*f, 32, rng);
    auto t0 = Clock::now();
    for (const auto& r : reqs) {
      if (!f->mint->deposit(r).ok()) {
        return make_error(ErrorCode::kInvalidRequest, "calibration deposit");
      }
    }
    rate = reqs.size() / seconds_since(t0);
  }
  for (std::size_t shards : config.shard_counts) {
    int threads = config.threads > 0 ? config.threads : static_cast<int>(shards);
    CBDC_ASSIGN_OR_RETURN(auto f,
                          make_fixture(config.mode, shards, config.seed));
    Drbg rng = Drbg(config.seed).fork("pool-" + std::to_string(shards));
    auto pool_size = static_cast<std::size_t>(
        rate * threads * config.duration_s * 1.5) + 64;
    auto reqs = make_deposits(*f, pool_size, rng);

    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> failed{0};
    std::atomic<bool> stop{false};
    auto t0 = Clock::now();
    std::vector<std::thread> workers;
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        while (!stop.load(std::memory_order_relaxed)) {
          std::size_t i = next.fetch_add(1);
          if (i >= reqs.size()) break;
          if (!f->mint->deposit(reqs[i]).ok()) ++failed;
        }
      });
    }
    while (seconds_since(t0) < config.duration_s &&
           next.load() < reqs.size()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    stop = true;
    for (auto& w : workers) w.join();
    double secs = seconds_since(t0);
    if (failed) {
      return make_error(ErrorCode::kInvalidRequest, "bench deposit rejected");
    }
    DepositBench b;
    b.shards = shards;
    b.threads = threads;
    b.deposits = std::min(next.load(), reqs.size());
    b.seconds = secs;
    b.per_s = b.deposits / secs;
    b.records = f->mint->spent_store().record_count();
    b.bytes = f->mint->spent_store().byte_size();
    out.push_back(b);
  }
  return out;
}

Result<std::vector<GrowthPoint>> bench_store_growth(std::size_t n,
                                                   std::uint64_t seed) {
  CBDC_ASSIGN_OR_RETURN(auto f,
                        make_fixture(crypto::CryptoMode::kToy, 4, seed));
  Drbg rng = Drbg(seed).fork("growth");
  std::vector<GrowthPoint> out;
  std::size_t step = std::max<std::size_t>(1, n / 10);
  std::size_t done = 0;
  while (done < n) {
    std::size_t batch = std::min(step, n - done);
    for (const auto& r : make_deposits(*f, batch, rng)) {
      if (!f->mint->deposit(r).ok()) {
        return make_error(ErrorCode::kInvalidRequest, "growth deposit");
      }
    }
    done += batch;
    out.push_back({done, f->mint->spent_store().record_count(),
                   f->mint->spent_store().byte_size()});
  }
  return out;
}

Result<BenchReport> bench(const BenchConfig& config) {
  BenchReport r;
  r.mode = std::string(crypto::crypto_mode_name(config.mode));
  r.hardware_threads = std::thread::hardware_concurrency();
  r.cpu = cpu_model();
  r.sign = bench_signing(config.mode, config.duration_s, config.seed);
  CBDC_ASSIGN_OR_RETURN(r.deposits, bench_deposits(config));
  if (config.growth_deposits) {
    CBDC_ASSIGN_OR_RETURN(r.growth, bench_store_growth(config.growth_deposits,
                                                       config.seed));
  }
  return r;
}

bool BenchReport::deposits_scale() const {
  for (std::size_t i = 1; i < deposits.size(); ++i) {
    if (deposits[i].per_s <= deposits[i - 1].per_s) return false;
  }
  return !deposits.empty();
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json j;
  j["mode"] = mode;
  j["hardware_threads"] = hardware_threads;
  j["cpu"] = cpu;
  j["sign"] = {{"rsa_bits", sign.rsa_bits},
               {"blind_sign_per_s", sign.sign_per_s},
               {"verify_per_s", sign.verify_per_s},
               {"coin_verify_per_s", sign.coin_verify_per_s}};
  j["deposits"] = nlohmann::ordered_json::array();
  for (const auto& d : deposits) {
    j["deposits"].push_back({{"shards", d.shards},
                             {"threads", d.threads},
                             {"deposits", d.deposits},
                             {"seconds", d.seconds},
                             {"per_s", d.per_s},
                             {"records", d.records},
                             {"bytes", d.bytes}});
  }
  j["deposits_scale"] = deposits_scale();
  j["growth"] = nlohmann::ordered_json::array();
  for (const auto& g : growth) {
    j["growth"].push_back(
        {{"deposits", g.deposits}, {"records", g.records}, {"bytes", g.bytes}});
  }
  return j.dump(2);
}

std::string BenchReport::table() const {
  std::ostringstream o;
  o.setf(std::ios::fixed);
  o.precision(1);
  o << "machine: " << cpu << ", " << hardware_threads << " hardware threads\n";
  o << "mode " << mode << ", RSA-" << sign.rsa_bits << "\n";
  o << "  blind_sign   " << sign.sign_per_s << " ops/s (one core)\n";
  o << "  rsa verify   " << sign.verify_per_s << " ops/s\n";
  o << "  coin verify  " << sign.coin_verify_per_s << " ops/s\n";
  o << "shards threads   deposits/s    records       bytes\n";
  for (const auto& d : deposits) {
    o << "  " << d.shards << "      " << d.threads << "        " << d.per_s
      << "     " << d.records << "     " << d.bytes << "\n";
  }
  o << "deposit throughput " << (deposits_scale() ? "rises" : "does not rise")
    << " with shard count\n";
  for (const auto& g : growth) {
    o << "  after " << g.deposits << " deposits: " << g.records
      << " records, " << g.bytes << " bytes\n";
  }
  return o.str();
}

}  // namespace cbdc::sim
