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

#include "cbdc/sim/adversary.h"

#include <latch>
#include <thread>

#include "cbdc/net/transport.h"
#include "cbdc/wallet/coin.h"

namespace cbdc::sim {

namespace {

constexpr Timestamp kEpoch = 1'767'225'600;

const mint::DenominationInfo* by_value(const mint::RegistryView& r, Amount v) {
  for (const auto& d : r.denominations()) {
    if (d.value == v) return &d;
  }
  return nullptr;
}

struct Rig {
  ManualClock clock{kEpoch};
  net::DirectTransport transport;
  std::unique_ptr<Deployment> d;
};

Result<std::unique_ptr<Rig>> make_rig(DeploymentConfig config) {
  auto rig = std::make_unique<Rig>();
  if (config.schedule.empty()) {
    config.schedule =
        make_schedule({Amount(1000), Amount(200), Amount(100)}, kEpoch);
  }
  CBDC_ASSIGN_OR_RETURN(rig->d,
                        Deployment::create(config, rig->transport, rig->clock));
  for (int i = 0; i < rig->d->customers(); ++i) {
    CBDC_RETURN_IF_ERROR(rig->d->wallet(i).sync_keys());
  }
  return rig;
}

}  // namespace

wire::DepositReq sign_deposit(const wallet::Coin& coin,
                              const wire::ContractTerms& contract,
                              Amount amount, const crypto::GroupParams& group,
                              Drbg& rng) {
  wire::DepositReq r;
  r.coin_pub = coin.pub;
  r.denom_id = coin.denom_id;
  r.denom_sig = coin.denom_sig;
  r.amount = amount;
  r.contract_hash = contract.hash();
  r.merchant_bank = contract.bank_id;
  r.merchant_id = contract.merchant_id;
  r.coin_sig = crypto::coin_sign(
                   coin.priv,
                   wire::deposit_payload(r.contract_hash, r.merchant_bank,
                                         r.merchant_id, amount),
                   group, rng)
                   .encode(group);
  return r;
}

Result<RefresherReport> cheating_refresher(int trials, int kappa,
                                           std::uint64_t seed,
                                           crypto::CryptoMode mode) {
  if (trials < 1 || kappa < 1 || kappa > mint::kMaxKappa) {
    return make_error(ErrorCode::kConfigError, "trials or kappa out of range");
  }
  DeploymentConfig config;
  config.mode = mode;
  config.seed = seed;
  config.kappa = kappa;
  config.customer_balance = Amount(1000) * (trials + 1);
  config.mint.min_kappa = std::min(kappa, 2);
  CBDC_ASSIGN_OR_RETURN(auto rig, make_rig(config));
  Deployment& d = *rig->d;
  wallet::Wallet& w = d.wallet(0);
  const auto& group = d.registry().group();
  const auto* coin_denom = by_value(d.registry(), Amount(1000));
  const auto* target = by_value(d.registry(), Amount(200));
  net::MintClient mint(rig->transport, kMintEndpoint);
  Drbg rng = Drbg(seed).fork("cheating-refresher");

  RefresherReport report;
  report.trials = trials;
  report.kappa = kappa;
  for (int t = 0; t < trials; ++t) {
    CBDC_ASSIGN_OR_RETURN(wallet::Coin coin, w.withdraw_denomination(*coin_denom));
    int bad = 1 + static_cast<int>(rng.uniform(kappa));
    Amount claim = coin.local_residual - target->value - target->refresh_fee;
    auto build = wallet::build_refresh(coin, claim, *target, kappa, group, rng,
                                       bad);
    CBDC_ASSIGN_OR_RETURN(auto challenge, mint.refresh_commit(build.request));
    auto resp = mint.refresh_reveal(wallet::build_reveal(build, challenge, group));
    if (!resp.ok()) {
      if (resp.code() != ErrorCode::kForfeited) return resp.error();
      ++report.caught;
      continue;
    }
    auto change = wallet::finish_refresh(build, challenge, *resp, *target);
    if (change.ok()) ++report.escaped_coins;
  }
  return report;
}

Result<RaceReport> double_spend_race(int threads, int repetitions,
                                     std::uint64_t seed,
                                     crypto::CryptoMode mode) {
  DeploymentConfig config;
  config.mode = mode;
  config.seed = seed;
  config.customer_balance = Amount(1000) * (repetitions + 1);
  config.merchants = threads;
  CBDC_ASSIGN_OR_RETURN(auto rig, make_rig(config));
  Deployment& d = *rig->d;
  wallet::Wallet& w = d.wallet(0);
  const auto& group = d.registry().group();
  const auto* denom = by_value(d.registry(), Amount(1000));
  Drbg rng = Drbg(seed).fork("double-spend-race");

  RaceReport report;
  report.repetitions = repetitions;
  for (int rep = 0; rep < repetitions; ++rep) {
    CBDC_ASSIGN_OR_RETURN(wallet::Coin coin, w.withdraw_denomination(*denom));
    std::vector<wire::DepositReq> reqs;
    for (int i = 0; i < threads; ++i) {
      auto contract = d.merchant(i).create_contract(Amount(100), "race");
      reqs.push_back(sign_deposit(coin, contract, Amount(100), group, rng));
    }
    Amount bank_before = *d.mint().bank_balance(bank_id(0));
    std::vector<ErrorCode> results(threads);
    std::latch start(threads);
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back([&, i] {
        net::GatewayClient gw(rig->transport, bank_id(0));
        start.arrive_and_wait();
        auto r = gw.deposit(reqs[i]);
        results[i] = r.ok() ? ErrorCode::kOk : r.error().root();
      });
    }
    for (auto& t : pool) t.join();
    int ok = 0, ds = 0;
    for (ErrorCode c : results) {
      if (c == ErrorCode::kOk) {
        ++ok;
      } else if (c == ErrorCode::kDoubleSpend) {
        ++ds;
      } else {
        ++report.other;
      }
    }
    report.accepted += ok;
    report.double_spend += ds;
    report.per_rep.emplace_back(ok, ds);
    auto rec = d.mint().spent_record(coin.pub);
    Amount credited = *d.mint().bank_balance(bank_id(0)) - bank_before;
    Amount merchants;
    for (int i = 0; i < threads; ++i) {
      merchants += d.gateway(0).merchant(merchant_id(i))->balance;
    }
    bool conserved = rec && rec->spent_total == Amount(100) * ok &&
                     rec->spent_total <= denom->value &&
                     credited == rec->spent_total &&
                     merchants == Amount(100) * report.accepted;
    if (!conserved) ++report.conservation_violations;
  }
  auto audit = d.mint().audit_denomination(denom->id);
  if (!audit.ok() || audit->violation ||
      audit->deposited_value != Amount(100) * report.accepted) {
    ++report.conservation_violations;
  }
  return report;
}

Result<ConspiracyOutcome> conspiracy_round(Deployment& d, int customer,
                                           int m_take, int m_reclaim,
                                           bool customer_first, Drbg& rng) {
  wallet::Wallet& w = d.wallet(customer);
  const auto& group = d.registry().group();
  const auto* denom = by_value(d.registry(), Amount(1000));
  const auto* target = by_value(d.registry(), Amount(200));
  if (!denom || !target) {
    return make_error(ErrorCode::kConfigError, "needs 10.00 and 2.00 coins");
  }
  CBDC_ASSIGN_OR_RETURN(wallet::Coin coin, w.withdraw_denomination(*denom));
  // The "payment": a change coin whose secrets go to the merchant.
  CBDC_ASSIGN_OR_RETURN(wallet::Coin handed_over,
                        w.refresh(coin.pub, target->id));

  ConspiracyOutcome o;
  o.customer_first = customer_first;
  net::MintClient mint(d.transport(), kMintEndpoint);
  CBDC_ASSIGN_OR_RETURN(wire::LinkResp link, mint.link(coin.pub));
  Bytes link_bytes = wire::encode(link);
  const std::string& who = w.config().customer_id;
  o.link_anonymous = std::search(link_bytes.begin(), link_bytes.end(),
                                 who.begin(), who.end()) == link_bytes.end();

  auto deposit = [&](int m, const wallet::Coin& c) {
    merchant::Merchant& mm = d.merchant(m);
    auto contract = mm.create_contract(target->value, "conspiracy");
    wire::Payment p{contract,
                    {sign_deposit(c, contract, target->value, group, rng)}};
    auto s = mm.receive(p, d.registry());
    if (s.delivered) return ErrorCode::kOk;
    return static_cast<ErrorCode>(s.parts.front().inner ? s.parts.front().inner
                                                        : s.parts.front().code);
  };
  auto merchant_claim = [&] { return deposit(m_take, handed_over); };
  auto customer_claim = [&]() -> ErrorCode {
    // Rebuilt from link data and the parent key alone.
    wallet::Coin parent = *w.find(coin.pub);
    auto derived = w.derive_linked_change(parent);
    if (!derived.ok()) return derived.code();
    for (const auto& c : *derived) {
      if (c.origin.parent_coin_pub == parent.pub) return deposit(m_reclaim, c);
    }
    return ErrorCode::kNotFound;
  };
  if (customer_first) {
    o.customer_result = customer_claim();
    o.merchant_result = merchant_claim();
  } else {
    o.merchant_result = merchant_claim();
    o.customer_result = customer_claim();
  }
  // Spent by whoever won; the wallet no longer counts it.
  if (wallet::Coin* c = w.find(handed_over.pub)) {
    c->local_residual = Amount::zero();
  }
  return o;
}

Result<std::vector<ConspiracyOutcome>> conspiring_merchant(
    std::uint64_t seed, crypto::CryptoMode mode) {
  DeploymentConfig config;
  config.mode = mode;
  config.seed = seed;
  config.customers = 2;
  config.merchants = 2;
  CBDC_ASSIGN_OR_RETURN(auto rig, make_rig(config));
  Drbg rng = Drbg(seed).fork("conspiracy");
  std::vector<ConspiracyOutcome> out;
  for (int i = 0; i < 2; ++i) {
    CBDC_ASSIGN_OR_RETURN(auto o,
                          conspiracy_round(*rig->d, i, 0, 1, i == 0, rng));
    out.push_back(o);
  }
  return out;
}

ForgeryReport stolen_key_forgery(Deployment& d, const Hash256& denom_id,
                                 int merchant, Drbg& rng) {
  ForgeryReport report;
  report.denom_id = denom_id;
  auto key = d.mint().registry().find(denom_id);
  if (!key.ok()) return report;
  const mint::DenominationKey& k = **key;
  const auto& group = d.registry().group();
  auto audit = d.mint().audit_denomination(denom_id);
  Amount headroom = audit->issued_value + audit->change_issued_value -
                    audit->deposited_value - audit->refunded_value -
                    audit->forfeited_value - audit->melted_value -
                    audit->reserved_value;
  int needed = static_cast<int>(headroom.minor() / k.info.value.minor()) + 1;
  merchant::Merchant& m = d.merchant(merchant);
  net::GatewayClient gw(d.transport(), m.config().bank_id);
  for (int i = 0; i < needed; ++i) {
    wallet::Coin coin;
    auto kp = crypto::group_keygen(group, rng);
    coin.priv = kp.priv;
    coin.pub = crypto::encode_element(group, kp.pub);
    coin.denom_id = denom_id;
    coin.denom_sig = crypto::to_fixed_bytes(
        crypto::rsa_sign(k.priv, crypto::fdh(k.info.pub.n, coin.pub)),
        k.info.pub.width());
    coin.face_value = k.info.value;
    auto contract = m.create_contract(k.info.value, "forged");
    ++report.forged;
    auto r = gw.deposit(sign_deposit(coin, contract, k.info.value, group, rng));
    if (r.ok()) {
      ++report.accepted;
      report.forged_value += k.info.value;
    }
  }
  return report;
}

}  // namespace cbdc::sim
