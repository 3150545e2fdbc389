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

#include "cbdc/sim/scenario.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cbdc/sim/adversary.h"
#include "cbdc/sim/deployment.h"
#include "json.hpp"

namespace cbdc::sim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string> kScripts = {"workload", "figures", "revocation",
                                        "conspiring-merchant"};
const std::set<std::string> kAdversaries = {"double-spender",
                                            "cheating-refresher", "stolen-key"};

Amount amount_field(const json& j, const char* key, Amount fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number_integer()) return Amount(v.get<std::int64_t>());
  auto a = Amount::parse(v.get<std::string>());
  if (!a) throw std::invalid_argument(std::string("bad amount in ") + key);
  return *a;
}

std::int64_t percentile(std::vector<std::int64_t>& v, double p) {
  if (v.empty()) return 0;
  std::size_t rank = static_cast<std::size_t>(p * (v.size() - 1) + 0.5);
  return v[std::min(rank, v.size() - 1)];
}

const char* mode_name(crypto::CryptoMode m) {
  return m == crypto::CryptoMode::kFull ? "full" : "toy";
}

}  // namespace

int ScenarioConfig::adversary_count(const std::string& name) const {
  int n = 0;
  for (const auto& a : adversaries) {
    if (a.name == name) n += a.count;
  }
  return n;
}

Result<ScenarioConfig> ScenarioConfig::from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return make_error(ErrorCode::kConfigError, "scenario is not a JSON object");
  }
  ScenarioConfig c;
  try {
    c.name = j.value("name", c.name);
    c.script = j.value("script", c.script);
    c.seed = j.value("seed", c.seed);
    std::string mode = j.value("mode", std::string("toy"));
    if (mode == "full") {
      c.mode = crypto::CryptoMode::kFull;
    } else if (mode != "toy") {
      return make_error(ErrorCode::kConfigError, "mode must be toy or full");
    }
    c.shards = j.value("shards", c.shards);
    c.start_time = j.value("start_time", c.start_time);
    for (const auto& d : j.value("denominations", json::array())) {
      if (d.is_object()) {
        c.denominations.push_back({amount_field(d, "value", Amount::zero()),
                                   amount_field(d, "refresh_fee", Amount::zero())});
      } else {
        auto v = Amount::parse(d.get<std::string>());
        if (!v) return make_error(ErrorCode::kConfigError, "bad denomination");
        c.denominations.push_back({*v, Amount::zero()});
      }
    }
    c.withdraw_days = j.value("withdraw_days", c.withdraw_days);
    c.deposit_days = j.value("deposit_days", c.deposit_days);
    c.legal_days = j.value("legal_days", c.legal_days);
    c.banks = j.value("banks", c.banks);
    c.customers = j.value("customers", c.customers);
    c.merchants = j.value("merchants", c.merchants);
    c.customer_balance = amount_field(j, "customer_balance", c.customer_balance);
    c.kappa = j.value("kappa", c.kappa);
    if (j.contains("faults")) {
      const json& f = j.at("faults");
      c.faults.loss = f.value("loss", 0.0);
      c.faults.duplication = f.value("duplication", 0.0);
      if (f.contains("latency_ms")) {
        c.faults.latency_min_ms = f.at("latency_ms").at(0).get<std::int64_t>();
        c.faults.latency_max_ms = f.at("latency_ms").at(1).get<std::int64_t>();
      }
      c.faults.timeout_ms = f.value("timeout_ms", c.faults.timeout_ms);
    }
    for (const auto& a : j.value("adversaries", json::array())) {
      c.adversaries.push_back({a.at("name").get<std::string>(),
                               a.value("count", 1)});
    }
    if (j.contains("workload")) {
      const json& w = j.at("workload");
      c.workload.rounds = w.value("rounds", c.workload.rounds);
      c.workload.withdraw = amount_field(w, "withdraw", c.workload.withdraw);
      c.workload.payment_min =
          amount_field(w, "payment_min", c.workload.payment_min);
      c.workload.payment_max =
          amount_field(w, "payment_max", c.workload.payment_max);
      c.workload.refresh_probability =
          w.value("refresh_probability", c.workload.refresh_probability);
    }
  } catch (const std::exception& e) {
    return make_error(ErrorCode::kConfigError, e.what());
  }

  if (!kScripts.count(c.script)) {
    return make_error(ErrorCode::kConfigError, "unknown script " + c.script);
  }
  for (const auto& a : c.adversaries) {
    if (!kAdversaries.count(a.name) || a.count < 0) {
      return make_error(ErrorCode::kConfigError, "unknown adversary " + a.name);
    }
  }
  if (c.denominations.empty() || c.banks < 1 || c.customers < 1 ||
      c.merchants < 1 || c.shards < 1) {
    return make_error(ErrorCode::kConfigError,
                      "needs denominations and at least one of each actor");
  }
  const FaultModel& f = c.faults;
  if (f.loss < 0 || f.loss >= 1 || f.duplication < 0 || f.duplication > 1 ||
      f.latency_min_ms < 0 || f.latency_max_ms < f.latency_min_ms) {
    return make_error(ErrorCode::kConfigError, "bad fault model");
  }
  if (c.workload.payment_min <= Amount::zero() ||
      c.workload.payment_max < c.workload.payment_min ||
      c.workload.withdraw <= Amount::zero()) {
    return make_error(ErrorCode::kConfigError, "bad workload amounts");
  }
  return c;
}

Result<ScenarioConfig> ScenarioConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return make_error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string ScenarioConfig::to_json() const {
  ordered_json j;
  j["name"] = name;
  j["script"] = script;
  j["seed"] = seed;
  j["mode"] = mode_name(mode);
  j["shards"] = shards;
  j["start_time"] = start_time;
  j["denominations"] = json::array();
  for (const auto& d : denominations) {
    j["denominations"].push_back(ordered_json{
        {"value", d.value.to_string()},
        {"refresh_fee", d.refresh_fee.to_string()}});
  }
  j["withdraw_days"] = withdraw_days;
  j["deposit_days"] = deposit_days;
  j["legal_days"] = legal_days;
  j["banks"] = banks;
  j["customers"] = customers;
  j["merchants"] = merchants;
  j["customer_balance"] = customer_balance.to_string();
  j["kappa"] = kappa;
  j["faults"] = ordered_json{
      {"loss", faults.loss},
      {"duplication", faults.duplication},
      {"latency_ms", {faults.latency_min_ms, faults.latency_max_ms}},
      {"timeout_ms", faults.timeout_ms}};
  j["adversaries"] = json::array();
  for (const auto& a : adversaries) {
    j["adversaries"].push_back(ordered_json{{"name", a.name}, {"count", a.count}});
  }
  j["workload"] = ordered_json{
      {"rounds", workload.rounds},
      {"withdraw", workload.withdraw.to_string()},
      {"payment_min", workload.payment_min.to_string()},
      {"payment_max", workload.payment_max.to_string()},
      {"refresh_probability", workload.refresh_probability}};
  return j.dump(2);
}

std::string MetricsReport::to_json() const {
  ordered_json j;
  j["name"] = name;
  j["script"] = script;
  j["seed"] = seed;
  j["green"] = green;
  j["first_violation"] = first_violation;
  j["violations"] = violations;
  ordered_json lat = ordered_json::object();
  for (const auto& l : latency) {
    lat[l.op] = ordered_json{{"count", l.count}, {"p50_ms", l.p50_ms},
                             {"p90_ms", l.p90_ms}, {"p99_ms", l.p99_ms},
                             {"max_ms", l.max_ms}};
  }
  j["latency"] = lat;
  j["virtual_ms"] = virtual_ms;
  j["operations"] = operations;
  j["throughput_ops_per_s"] = throughput;
  j["withdrawals"] = withdrawals;
  j["withdrawal_failures"] = withdrawal_failures;
  j["payments_delivered"] = payments_delivered;
  j["payments_failed"] = payments_failed;
  j["payments_skipped"] = payments_skipped;
  j["refreshes"] = refreshes;
  j["refunds"] = refunds;
  j["refunded"] = refunded.to_string();
  j["double_spend_attempts"] = double_spend_attempts;
  j["double_spend_rejections"] = double_spend_rejections;
  j["cheat_attempts"] = cheat_attempts;
  j["forfeits"] = forfeits;
  j["forged_accepted"] = forged_accepted;
  j["forged_value"] = forged_value.to_string();
  j["store"] = ordered_json{{"records", store_records}, {"bytes", store_bytes}};
  j["bus"] = ordered_json{{"messages", bus.messages},
                          {"bytes", bus.bytes},
                          {"lost", bus.lost},
                          {"duplicated", bus.duplicated},
                          {"largest_message", bus.largest_message}};
  j["customer_debits"] = customer_debits.to_string();
  j["merchant_credits"] = merchant_credits.to_string();
  j["steps"] = steps;
  j["balances_digest"] = balances_digest;
  return j.dump(2);
}

std::string MetricsReport::summary() const {
  std::ostringstream o;
  o << "scenario " << name << " (" << script << ", seed " << seed << "): "
    << (green ? "GREEN" : "RED") << "\n";
  if (!green) o << "  first violation: " << first_violation << "\n";
  o << "  withdrawals " << withdrawals << " (" << withdrawal_failures
    << " failed), payments " << payments_delivered << " delivered, "
    << payments_failed << " failed, " << payments_skipped << " skipped\n";
  o << "  refreshes " << refreshes << ", refunds " << refunds << " ("
    << refunded.to_string() << ")\n";
  o << "  double-spend attempts " << double_spend_attempts << ", rejected "
    << double_spend_rejections << "; cheats " << cheat_attempts
    << ", forfeited " << forfeits << "\n";
  if (forged_accepted) {
    o << "  forged deposits accepted " << forged_accepted << " ("
      << forged_value.to_string() << ")\n";
  }
  for (const auto& l : latency) {
    o << "  " << l.op << ": n=" << l.count << " p50=" << l.p50_ms
      << "ms p90=" << l.p90_ms << "ms p99=" << l.p99_ms << "ms\n";
  }
  o << "  " << operations << " ops in " << virtual_ms << " simulated ms ("
    << throughput << " ops/s)\n";
  o << "  store " << store_records << " records, " << store_bytes
    << " bytes; bus " << bus.messages << " messages, " << bus.bytes
    << " bytes, largest " << bus.largest_message << "\n";
  return o.str();
}

Status scenario_status(const MetricsReport& report) {
  if (report.green) return ok_status();
  return make_error(ErrorCode::kScenarioError, report.first_violation);
}

namespace {

class Runner {
 public:
  Runner(const ScenarioConfig& config, VirtualClock& clock, Bus& bus,
         EventLog& log, Deployment& d)
      : config_(config), clock_(clock), bus_(bus), log_(log), d_(d),
        rng_(Drbg(config.seed).fork("scenario")) {}

  void run() {
    note("start", config_.script);
    if (config_.script == "figures") {
      figures();
    } else if (config_.script == "revocation") {
      revocation();
    } else if (config_.script == "conspiring-merchant") {
      conspiracy();
    } else {
      workload();
    }
    drain();
    if (config_.adversary_count("stolen-key") > 0) stolen_key();
    check();
    finish();
  }

  MetricsReport& report() { return report_; }

 private:
  struct Unsettled {
    int merchant;
    wire::ContractTerms contract;
    std::vector<wire::DepositReq> parts;
  };

  void note(std::string_view event, std::string detail) {
    log_.add(clock_.now_ms(), "harness", event, detail);
  }

  void violation(std::string what) {
    note("violation", what);
    report_.violations.push_back(std::move(what));
  }

  void sample(const std::string& op, std::int64_t t0) {
    latencies_[op].push_back(clock_.now_ms() - t0);
    ++report_.operations;
  }

  const mint::DenominationInfo* denom_by_value(Amount v) const {
    for (const auto& d : d_.registry().denominations()) {
      if (d.value == v) return &d;
    }
    return nullptr;
  }

  const mint::DenominationInfo* largest() const {
    const mint::DenominationInfo* best = nullptr;
    for (const auto& d : d_.registry().denominations()) {
      if (!best || d.value > best->value) best = &d;
    }
    return best;
  }

  const mint::DenominationInfo* smallest() const {
    const mint::DenominationInfo* best = nullptr;
    for (const auto& d : d_.registry().denominations()) {
      if (!best || d.value < best->value) best = &d;
    }
    return best;
  }

  Result<wallet::Coin> withdraw_one(int c, const mint::DenominationInfo& d) {
    Bus::Actor a(bus_, customer_id(c));
    std::int64_t t0 = clock_.now_ms();
    auto r = d_.wallet(c).withdraw_denomination(d);
    sample("withdraw", t0);
    if (r.ok()) {
      ++report_.withdrawals;
    } else {
      ++report_.withdrawal_failures;
    }
    return r;
  }

  // Pays `amount` from customer c to merchant m. Returns the settlement if
  // the wallet could form a payment.
  std::optional<wire::Settlement> pay(int c, int m, Amount amount,
                                      const std::string& what) {
    wire::ContractTerms contract;
    {
      Bus::Actor a(bus_, merchant_id(m));
      contract = d_.merchant(m).create_contract(amount, what);
    }
    std::int64_t t0 = clock_.now_ms();
    Result<wire::Payment> payment = make_error(ErrorCode::kUnavailable);
    {
      Bus::Actor a(bus_, customer_id(c));
      payment = d_.wallet(c).pay(contract);
    }
    if (!payment.ok()) {
      ++report_.payments_skipped;
      note("payment-skipped", customer_id(c) + " " +
                                  std::string(error_code_name(payment.code())));
      return std::nullopt;
    }
    return settle(m, *payment, t0);
  }

  wire::Settlement settle(int m, const wire::Payment& payment,
                          std::int64_t t0) {
    Bus::Actor a(bus_, merchant_id(m));
    wire::Settlement s = d_.merchant(m).receive(payment, d_.registry());
    sample("payment", t0);
    if (s.delivered) {
      ++report_.payments_delivered;
    } else {
      unsettled_.push_back({m, payment.contract, payment.parts});
    }
    return s;
  }

  void workload() {
    const WorkloadConfig& w = config_.workload;
    int spenders = std::min(config_.adversary_count("double-spender"),
                            config_.customers);
    note("phase", "withdraw");
    for (int c = 0; c < config_.customers; ++c) {
      Bus::Actor a(bus_, customer_id(c));
      std::int64_t t0 = clock_.now_ms();
      auto r = d_.wallet(c).withdraw(w.withdraw);
      sample("withdraw", t0);
      if (r.ok()) {
        report_.withdrawals += r->size();
      } else {
        ++report_.withdrawal_failures;
      }
    }
    for (int round = 0; round < w.rounds; ++round) {
      note("phase", "round " + std::to_string(round));
      for (int c = 0; c < config_.customers; ++c) {
        int m = static_cast<int>(rng_.uniform(config_.merchants));
        std::int64_t span = w.payment_max.minor() - w.payment_min.minor() + 1;
        Amount amount =
            w.payment_min + Amount(static_cast<std::int64_t>(rng_.uniform(span)));
        pay(c, m, amount, "order " + std::to_string(round) + "/" +
                              std::to_string(c));
        if (rng_.uniform_double() < w.refresh_probability) refresh_some(c);
        if (c < spenders) double_spend(c, round);
      }
      clock_.advance_ms(60'000);
    }
    int cheats = config_.adversary_count("cheating-refresher");
    if (cheats > 0) cheating_refresher(cheats);
  }

  void refresh_some(int c) {
    wallet::Wallet& w = d_.wallet(c);
    for (const auto& coin : w.coins()) {
      if (coin.local_residual.is_positive() &&
          coin.local_residual < coin.face_value) {
        Bytes pub = coin.pub;
        Bus::Actor a(bus_, customer_id(c));
        std::int64_t t0 = clock_.now_ms();
        auto r = w.refresh_residual(pub);
        sample("refresh", t0);
        if (r.ok()) report_.refreshes += r->size();
        return;
      }
    }
  }

  // Pays with a fresh coin in full, then spends a copy of it again at
  // another merchant. Odd rounds put the copy first.
  void double_spend(int c, int round) {
    const auto* d = smallest();
    auto coin = withdraw_one(c, *d);
    if (!coin.ok()) return;
    int honest_m = round % config_.merchants;
    int rogue_m = (round + 1) % config_.merchants;
    const auto& group = d_.registry().group();
    auto replay = [&] {
      wire::ContractTerms contract;
      {
        Bus::Actor a(bus_, merchant_id(rogue_m));
        contract = d_.merchant(rogue_m).create_contract(d->value, "replay");
      }
      wire::Payment p{contract,
                      {sign_deposit(*coin, contract, d->value, group, rng_)}};
      return settle(rogue_m, p, clock_.now_ms());
    };
    // The honest payment must use exactly this coin.
    auto honest = [&]() -> std::optional<wire::Settlement> {
      wire::ContractTerms contract;
      {
        Bus::Actor a(bus_, merchant_id(honest_m));
        contract = d_.merchant(honest_m).create_contract(d->value, "spend");
      }
      wallet::PaymentPlan plan{contract.hash(), {{coin->pub, d->value}},
                               d->value};
      Result<std::vector<wire::DepositReq>> parts =
          make_error(ErrorCode::kUnavailable);
      {
        Bus::Actor a(bus_, customer_id(c));
        parts = d_.wallet(c).pay(contract, plan);
      }
      if (!parts.ok()) return std::nullopt;
      return settle(honest_m, wire::Payment{contract, *parts}, clock_.now_ms());
    };
    report_.double_spend_attempts += 2;
    std::optional<wire::Settlement> first, second;
    if (round % 2) {
      first = replay();
      second = honest();
    } else {
      first = honest();
      second = replay();
    }
    for (const auto* s : {&first, &second}) {
      if (*s && !(*s)->delivered && !(*s)->parts.empty() &&
          (*s)->parts.front().inner ==
              static_cast<std::uint16_t>(ErrorCode::kDoubleSpend)) {
        ++report_.double_spend_rejections;
      }
    }
    bool both = first && first->delivered && second && second->delivered;
    if (both) ++double_accepted_;
    note("double-spend", customer_id(c) + " first=" +
                             (first && first->delivered ? "ok" : "rejected") +
                             " second=" +
                             (second && second->delivered ? "ok" : "rejected"));
    // A DoubleSpend loser is final; anything else is settled in the drain.
    std::erase_if(unsettled_, [&](const Unsettled& u) {
      return std::any_of(u.parts.begin(), u.parts.end(),
                         [&](const auto& p) { return p.coin_pub == coin->pub; }) &&
             first && first->delivered;
    });
  }

  void cheating_refresher(int trials) {
    note("phase", "cheating-refresher");
    int c = config_.customers - 1;
    wallet::Wallet& w = d_.wallet(c);
    const auto* from = largest();
    const auto* target = smallest();
    const auto& group = d_.registry().group();
    net::MintClient mint(bus_, kMintEndpoint);
    Drbg rng = Drbg(config_.seed).fork("cheater");
    for (int t = 0; t < trials; ++t) {
      auto coin = withdraw_one(c, *from);
      if (!coin.ok()) continue;
      Bus::Actor a(bus_, customer_id(c));
      Amount need = target->value + target->refresh_fee;
      int bad = 1 + static_cast<int>(rng.uniform(config_.kappa));
      auto build = wallet::build_refresh(*coin, coin->face_value - need,
                                         *target, config_.kappa, group, rng,
                                         bad);
      ++report_.cheat_attempts;
      // Lost replies are recovered by replaying the identical request.
      auto retry = [](auto fn) {
        auto r = fn();
        for (int i = 0; i < 64 && r.code() == ErrorCode::kUnavailable; ++i) {
          r = fn();
        }
        return r;
      };
      auto ch = retry([&] { return mint.refresh_commit(build.request); });
      if (!ch.ok()) continue;
      wallet::Coin* held = w.find(coin->pub);
      held->local_residual -= need;
      auto reveal = wallet::build_reveal(build, *ch, group);
      auto resp = retry([&] { return mint.refresh_reveal(reveal); });
      if (!resp.ok()) {
        if (resp.code() == ErrorCode::kForfeited) {
          ++report_.forfeits;
          held->local_residual = Amount::zero();
        }
        continue;
      }
      auto change = wallet::finish_refresh(build, *ch, *resp, *target);
      if (change.ok()) w.add_coin(*change);
    }
  }

  void figures() {
    const auto* d = largest();
    note("phase", "withdrawal");
    auto coin = withdraw_one(0, *d);
    if (!coin.ok()) {
      violation("figures: withdrawal failed: " + coin.error().to_string());
      return;
    }
    note("phase", "payment");
    auto s = pay(0, 0, d->value, "figures");
    if (!s || !s->delivered) violation("figures: payment not delivered");
    figures_value_ = d->value;
  }

  void revocation() {
    const auto* d = d_.registry().find(denom_ids_.front());
    std::vector<Bytes> pubs;
    for (int i = 0; i < 10; ++i) {
      auto coin = withdraw_one(0, *d);
      if (coin.ok()) pubs.push_back(coin->pub);
    }
    if (pubs.size() != 10) {
      violation("revocation: expected 10 coins, got " +
                std::to_string(pubs.size()));
      return;
    }
    for (int i = 0; i < 4; ++i) pay(0, i % config_.merchants, d->value, "spend");
    std::set<Bytes> unspent;
    for (const auto& c : d_.wallet(0).coins()) {
      if (c.local_residual == c.face_value) unspent.insert(c.pub);
    }
    note("phase", "revoke");
    auto notice = d_.mint().revoke_denomination(d->id);
    if (!notice.ok()) {
      violation("revocation: revoke failed");
      return;
    }
    Bus::Actor a(bus_, customer_id(0));
    std::int64_t t0 = clock_.now_ms();
    auto rr = d_.wallet(0).recover_revoked(*notice);
    sample("refund", t0);
    report_.refunded = rr.refunded;
    for (const auto& o : rr.coins) {
      bool fresh = unspent.count(o.coin_pub) > 0;
      Amount got = o.result.ok() ? *o.result : Amount::zero();
      if (o.result.ok()) ++report_.refunds;
      if (fresh && got != d->value) {
        violation("revocation: unspent coin refunded " + got.to_string());
      }
      if (!fresh && !got.is_zero()) {
        violation("revocation: spent coin refunded " + got.to_string());
      }
    }
    if (rr.coins.size() != 10 || unspent.size() != 6 ||
        rr.refunded != d->value * 6) {
      violation("revocation: refunded " + rr.refunded.to_string() +
                " over " + std::to_string(rr.coins.size()) + " coins");
    }
  }

  void conspiracy() {
    if (config_.customers < 2 || config_.merchants < 2) {
      violation("conspiring-merchant: needs two customers and two merchants");
      return;
    }
    Drbg rng = Drbg(config_.seed).fork("conspiracy");
    for (int i = 0; i < 2; ++i) {
      bool customer_first = i == 0;
      Bus::Actor a(bus_, customer_id(i));
      auto o = conspiracy_round(d_, i, 0, 1, customer_first, rng);
      if (!o.ok()) {
        violation("conspiring-merchant: " + o.error().to_string());
        continue;
      }
      ErrorCode first = customer_first ? o->customer_result : o->merchant_result;
      ErrorCode second =
          customer_first ? o->merchant_result : o->customer_result;
      note("conspiracy",
           std::string(customer_first ? "customer-first" : "merchant-first") +
               " customer=" + std::string(error_code_name(o->customer_result)) +
               " merchant=" + std::string(error_code_name(o->merchant_result)));
      report_.double_spend_attempts += 2;
      if (second == ErrorCode::kDoubleSpend) ++report_.double_spend_rejections;
      if (first != ErrorCode::kOk || second != ErrorCode::kDoubleSpend) {
        violation("conspiring-merchant: second claim was not rejected");
      }
      if (!o->link_anonymous) {
        violation("conspiring-merchant: link data names the customer");
      }
    }
    unsettled_.clear();
  }

  void drain() {
    note("phase", "drain");
    FaultModel calm = bus_.faults();
    calm.loss = 0;
    calm.duplication = 0;
    bus_.set_faults(calm);
    for (int pass = 0; pass < 3; ++pass) {
      for (int c = 0; c < d_.customers(); ++c) {
        Bus::Actor a(bus_, customer_id(c));
        report_.operations += d_.wallet(c).retry_pending();
      }
    }
    std::vector<Unsettled> still;
    for (auto& u : unsettled_) {
      Bus::Actor a(bus_, merchant_id(u.merchant));
      auto s = d_.merchant(u.merchant).settle(u.contract, u.parts);
      if (s.delivered) {
        ++report_.payments_delivered;
      } else {
        still.push_back(std::move(u));
      }
    }
    report_.payments_failed = still.size();
    unsettled_ = std::move(still);
  }

  void stolen_key() {
    note("phase", "stolen-key");
    const auto* d = largest();
    Drbg rng = Drbg(config_.seed).fork("stolen-key");
    Bus::Actor a(bus_, "thief");
    auto r = stolen_key_forgery(d_, d->id, 0, rng);
    forged_denom_ = d->id;
    report_.forged_accepted = r.accepted;
    report_.forged_value = r.forged_value;
    note("forgery", std::to_string(r.accepted) + "/" +
                        std::to_string(r.forged) + " accepted");
  }

  void check() {
    note("phase", "check");
    mint::Mint& mint = d_.mint();
    Amount outstanding, issued_w, deposited, refunded, reserved;
    std::map<Hash256, Amount> face;
    for (const auto& id : denom_ids_) {
      auto a = mint.audit_denomination(id);
      if (!a.ok()) {
        violation("audit unavailable");
        return;
      }
      outstanding += a->issued_value + a->change_issued_value -
                     a->deposited_value - a->refunded_value -
                     a->forfeited_value - a->melted_value - a->reserved_value;
      issued_w += a->issued_value;
      deposited += a->deposited_value;
      refunded += a->refunded_value;
      reserved += a->reserved_value;
      bool expect = forged_denom_ && *forged_denom_ == id &&
                    report_.forged_accepted > 0;
      if (a->violation != expect) {
        violation(std::string("audit flag ") + (a->violation ? "raised" : "missing") +
                  " for " + to_hex(id).substr(0, 12));
      }
    }

    // Per-coin value outside the mint's books.
    Amount held;
    std::set<Bytes> coin_pubs;
    bool agree = true;
    for (int c = 0; c < d_.customers(); ++c) {
      for (const auto& coin : d_.wallet(c).coins()) {
        coin_pubs.insert(coin.pub);
        auto rec = mint.spent_record(coin.pub);
        Amount spent = rec ? rec->spent_total : Amount::zero();
        held += coin.face_value - spent;
        if (coin.local_residual != coin.face_value - spent) agree = false;
      }
      if (!d_.wallet(c).pending().empty() || d_.wallet(c).pending_refreshes()) {
        violation(customer_id(c) + " has unfinished operations after drain");
      }
    }
    if (outstanding + report_.forged_value != held) {
      orphan_change();
      violation("conservation: mint outstanding " + outstanding.to_string() +
                " + forged " + report_.forged_value.to_string() +
                " != wallet value " + held.to_string());
    }
    if (!agree && config_.faults.loss == 0) {
      violation("wallet and mint residuals disagree");
    }
    if (!reserved.is_zero()) {
      violation("refresh reservations left open: " + reserved.to_string());
    }

    Amount reserves;
    for (int b = 0; b < d_.banks(); ++b) {
      reserves += *mint.bank_balance(bank_id(b));
    }
    Amount expected_reserves = d_.config().bank_reserves * d_.banks() -
                               issued_w + deposited + refunded;
    if (reserves != expected_reserves) {
      violation("bank reserves " + reserves.to_string() + " != " +
                expected_reserves.to_string());
    }

    // Spent store: per-merchant income and overspend.
    std::map<std::pair<std::string, std::string>, Amount> income;
    std::size_t overspent = 0;
    for (std::size_t s = 0; s < mint.spent_store().shard_count(); ++s) {
      mint.spent_store().shard(s).for_each(
          [&](ByteView, const store::Versioned& v) {
            auto rec = wire::decode_spent_record(v.value);
            if (!rec.ok()) return;
            auto info = mint.registry().find(rec->denom_id);
            if (info.ok() && rec->spent_total > (*info)->info.value) ++overspent;
            for (const auto& e : rec->entries) {
              if (e.kind == wire::SpendKind::kDeposit) {
                income[{e.bank_id, e.merchant_id}] += e.amount;
              }
            }
          });
    }
    if (overspent) {
      violation(std::to_string(overspent) + " coins spent beyond face value");
    }

    Amount relayed, debits, merchant_credits;
    for (int b = 0; b < d_.banks(); ++b) {
      bank::Gateway& g = d_.gateway(b);
      if (g.total_customer_debits() - g.total_rollbacks() != g.total_relayed()) {
        violation(bank_id(b) + ": debits minus rollbacks != relayed");
      }
      relayed += g.total_relayed();
      for (const auto& r : g.withdrawal_log()) {
        if (coin_pubs.count(r.f_blinded)) {
          violation(bank_id(b) + " holds a coin public key");
        }
      }
      for (const auto& r : g.forwarded()) {
        if (coin_pubs.count(r.f_blinded)) {
          violation(bank_id(b) + " forwarded a coin public key");
        }
      }
    }
    if (relayed != issued_w) {
      violation("gateways relayed " + relayed.to_string() + " but mint issued " +
                issued_w.to_string());
    }
    for (int c = 0; c < d_.customers(); ++c) {
      auto acct = d_.gateway(d_.bank_of_customer(c)).customer(customer_id(c));
      debits += d_.config().customer_balance - acct->balance;
    }
    if (debits + refunded != relayed) {
      violation("customer debits " + debits.to_string() + " + refunds " +
                refunded.to_string() + " != relayed " + relayed.to_string());
    }
    for (int m = 0; m < d_.merchants(); ++m) {
      int b = d_.bank_of_merchant(m);
      auto acct = d_.gateway(b).merchant(merchant_id(m));
      merchant_credits += acct->balance;
      Amount traced = income[{bank_id(b), merchant_id(m)}];
      if (acct->balance != traced) {
        violation(merchant_id(m) + " credited " + acct->balance.to_string() +
                  " but mint deposits total " + traced.to_string());
      }
    }
    report_.customer_debits = debits;
    report_.merchant_credits = merchant_credits;

    if (double_accepted_) {
      violation("double-spend: " + std::to_string(double_accepted_) +
                " coins accepted twice");
    }

    if (config_.script == "figures") {
      report_.steps = log_.steps();
      std::vector<std::string> want;
      for (int i = 1; i <= 9; ++i) want.push_back("W" + std::to_string(i));
      for (int i = 1; i <= 9; ++i) want.push_back("S" + std::to_string(i));
      if (report_.steps != want) violation("figures: step sequence differs");
      if (debits != figures_value_ || merchant_credits != figures_value_) {
        violation("figures: debit " + debits.to_string() + ", credit " +
                  merchant_credits.to_string() + ", coin " +
                  figures_value_.to_string());
      }
    }

    Sha256 h;
    for (int b = 0; b < d_.banks(); ++b) {
      h.update(bank_id(b)).update(mint.bank_balance(bank_id(b))->to_string());
    }
    for (int c = 0; c < d_.customers(); ++c) {
      auto acct = d_.gateway(d_.bank_of_customer(c)).customer(customer_id(c));
      h.update(customer_id(c)).update(acct->balance.to_string());
    }
    for (int m = 0; m < d_.merchants(); ++m) {
      auto acct = d_.gateway(d_.bank_of_merchant(m)).merchant(merchant_id(m));
      h.update(merchant_id(m)).update(acct->balance.to_string());
    }
    report_.balances_digest = to_hex(h.finish());
  }

  // Logs completed refreshes whose change coin no wallet holds.
  void orphan_change() {
    std::set<Hash256> held;
    for (int c = 0; c < d_.customers(); ++c) {
      for (const auto& coin : d_.wallet(c).coins()) {
        if (coin.origin.kind == wire::CoinOriginKind::kChange) {
          held.insert(coin.origin.id);
        }
      }
    }
    const auto& spent = d_.mint().spent_store();
    for (std::size_t s = 0; s < spent.shard_count(); ++s) {
      spent.shard(s).for_each([&](ByteView, const store::Versioned& v) {
        auto rec = wire::decode_spent_record(v.value);
        if (!rec.ok()) return;
        for (const auto& session : rec->sessions) {
          if (session.state == wire::SessionState::kCompleted &&
              !held.count(session.session_id)) {
            note("orphan-change", to_hex(session.session_id).substr(0, 12) +
                                      " " + session.target_value.to_string());
          }
        }
      });
    }
  }

  void finish() {
    for (auto& [op, v] : latencies_) {
      std::sort(v.begin(), v.end());
      report_.latency.push_back({op, v.size(), percentile(v, 0.5),
                                 percentile(v, 0.9), percentile(v, 0.99),
                                 v.empty() ? 0 : v.back()});
    }
    report_.virtual_ms = clock_.now_ms();
    report_.throughput =
        report_.virtual_ms
            ? report_.operations * 1000.0 / double(report_.virtual_ms)
            : 0.0;
    report_.store_records = d_.mint().spent_store().record_count();
    report_.store_bytes = d_.mint().spent_store().byte_size();
    report_.bus = bus_.stats();
    report_.green = report_.violations.empty();
    if (!report_.green) report_.first_violation = report_.violations.front();
    note("end", report_.green ? "green" : "red");
  }

 public:
  std::vector<Hash256> denom_ids_;

 private:
  const ScenarioConfig& config_;
  VirtualClock& clock_;
  Bus& bus_;
  EventLog& log_;
  Deployment& d_;
  Drbg rng_;
  MetricsReport report_;
  std::map<std::string, std::vector<std::int64_t>> latencies_;
  std::vector<Unsettled> unsettled_;
  std::optional<Hash256> forged_denom_;
  Amount figures_value_;
  int double_accepted_ = 0;
};

}  // namespace

Result<ScenarioResult> run(const ScenarioConfig& config) {
  ScenarioResult out;
  VirtualClock clock(config.start_time);
  Drbg root(config.seed);
  // Faults start with the script; setup runs on a calm network.
  FaultModel calm = config.faults;
  calm.loss = 0;
  calm.duplication = 0;
  Bus bus(clock, calm, root.fork("faults"), &out.log);

  DeploymentConfig dc;
  dc.mode = config.mode;
  dc.shards = config.shards;
  dc.banks = config.banks;
  dc.customers = config.customers;
  dc.merchants = config.merchants;
  dc.customer_balance = config.customer_balance;
  dc.kappa = config.kappa;
  dc.seed = config.seed;
  for (const auto& d : config.denominations) {
    auto s = make_schedule({d.value}, config.start_time, d.refresh_fee,
                           config.withdraw_days, config.deposit_days,
                           config.legal_days);
    dc.schedule.push_back(s.front());
  }
  auto sleeper = [&clock](std::chrono::milliseconds ms) {
    clock.advance_ms(ms.count());
  };
  CBDC_ASSIGN_OR_RETURN(auto d, Deployment::create(dc, bus, clock, sleeper));
  d->set_tracers([&](const std::string& actor) -> Tracer {
    return [&out, &clock, actor](std::string_view step, std::string detail) {
      out.log.add(clock.now_ms(), actor, step, detail);
    };
  });
  for (int c = 0; c < d->customers(); ++c) {
    Bus::Actor a(bus, customer_id(c));
    CBDC_RETURN_IF_ERROR(d->wallet(c).sync_keys());
  }

  bus.set_faults(config.faults);
  Runner runner(config, clock, bus, out.log, *d);
  for (const auto& info : d->registry().denominations()) {
    runner.denom_ids_.push_back(info.id);
  }
  // Schedule order, so "first denomination" means the first one configured.
  std::vector<Hash256> ordered;
  for (const auto& dcfg : config.denominations) {
    for (const auto& info : d->registry().denominations()) {
      if (info.value == dcfg.value &&
          std::find(ordered.begin(), ordered.end(), info.id) == ordered.end()) {
        ordered.push_back(info.id);
        break;
      }
    }
  }
  runner.denom_ids_ = ordered;
  runner.run();
  out.report = std::move(runner.report());
  out.report.name = config.name;
  out.report.script = config.script;
  out.report.seed = config.seed;
  return out;
}

}  // namespace cbdc::sim
