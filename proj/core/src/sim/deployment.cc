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

#include "cbdc/sim/deployment.h"

#include <filesystem>

namespace cbdc::sim {

std::vector<mint::DenominationSpec> make_schedule(
    const std::vector<Amount>& values, Timestamp start, Amount refresh_fee,
    std::int64_t withdraw_days, std::int64_t deposit_days,
    std::int64_t legal_days) {
  std::vector<mint::DenominationSpec> out;
  for (Amount v : values) {
    out.push_back({v, start, start + withdraw_days * 86400,
                   start + deposit_days * 86400, start + legal_days * 86400,
                   refresh_fee});
  }
  return out;
}

std::string bank_id(int index) { return "bank-" + std::to_string(index); }
std::string customer_id(int index) {
  return "customer-" + std::to_string(index);
}
std::string merchant_id(int index) {
  return "merchant-" + std::to_string(index);
}

Result<std::unique_ptr<Deployment>> Deployment::create(
    const DeploymentConfig& config, net::Transport& transport,
    const Clock& clock, merchant::Sleeper sleep) {
  if (config.banks < 1 || config.customers < 0 || config.merchants < 0 ||
      config.shards < 1) {
    return make_error(ErrorCode::kConfigError, "bad actor counts");
  }
  std::unique_ptr<Deployment> d(new Deployment(config, transport, clock));
  Drbg root(config.seed);
  const crypto::CryptoProfile& profile = crypto::crypto_profile(config.mode);

  Drbg key_rng = root.fork("mint-keys");
  CBDC_ASSIGN_OR_RETURN(auto registry, mint::DenominationRegistry::setup(
                                           config.schedule, profile, key_rng));
  std::unique_ptr<store::KvStore> issuance;
  std::optional<store::ShardedStore> spent;
  if (config.store_dir.empty()) {
    spent.emplace(store::ShardedStore::in_memory(config.shards));
    issuance = std::make_unique<store::InMemoryKvStore>();
  } else {
    std::error_code ec;
    std::filesystem::create_directories(config.store_dir, ec);
    CBDC_ASSIGN_OR_RETURN(auto s, store::ShardedStore::on_disk(config.store_dir,
                                                               config.shards));
    spent.emplace(std::move(s));
    CBDC_ASSIGN_OR_RETURN(
        auto log, store::FileKvStore::open(config.store_dir + "/issuance.log"));
    issuance = std::move(log);
  }
  mint::MintConfig mint_config = config.mint;
  if (mint_config.gamma_seed == 0) {
    mint_config.gamma_seed = root.fork("mint-gamma").next_u64();
  }
  d->mint_ = std::make_unique<mint::Mint>(std::move(registry),
                                          std::move(*spent),
                                          std::move(issuance), clock,
                                          mint_config);
  d->mint_service_ = std::make_unique<mint::MintService>(*d->mint_);
  transport.bind(kMintEndpoint,
                 [svc = d->mint_service_.get()](const std::string& path,
                                                ByteView req) {
                   return svc->handle(path, req);
                 });
  const auto& group = d->mint_->registry().group();

  for (int b = 0; b < config.banks; ++b) {
    bank::GatewayConfig gc;
    gc.bank_id = bank_id(b);
    for (int c = b; c < config.customers; c += config.banks) {
      gc.customers.push_back({customer_id(c), "secret-" + customer_id(c),
                              config.customer_balance, config.daily_limit});
    }
    for (int m = b; m < config.merchants; m += config.banks) {
      gc.merchants.push_back({merchant_id(m), config.merchant_inbound_limit});
    }
    auto gw = std::make_unique<bank::Gateway>(
        std::move(gc), group, net::MintClient(transport, kMintEndpoint),
        root.fork(bank_id(b)));
    CBDC_RETURN_IF_ERROR(d->mint_->register_bank(gw->bank_id(), gw->signing_pub(),
                                                 config.bank_reserves));
    auto svc = std::make_unique<bank::GatewayService>(*gw);
    transport.bind(bank_id(b), [s = svc.get()](const std::string& path,
                                               ByteView req) {
      return s->handle(path, req);
    });
    d->gateways_.push_back(std::move(gw));
    d->gateway_services_.push_back(std::move(svc));
  }

  for (int c = 0; c < config.customers; ++c) {
    wallet::WalletConfig wc;
    wc.customer_id = customer_id(c);
    wc.credential = "secret-" + customer_id(c);
    wc.kappa = config.kappa;
    d->wallets_.push_back(std::make_unique<wallet::Wallet>(
        std::move(wc), net::MintClient(transport, kMintEndpoint),
        net::GatewayClient(transport, bank_id(d->bank_of_customer(c))), clock,
        root.fork(customer_id(c))));
  }
  for (int m = 0; m < config.merchants; ++m) {
    merchant::MerchantConfig mc;
    mc.bank_id = bank_id(d->bank_of_merchant(m));
    mc.merchant_id = merchant_id(m);
    d->merchants_.push_back(std::make_unique<merchant::Merchant>(
        mc, net::GatewayClient(transport, mc.bank_id),
        root.fork(merchant_id(m)), sleep));
  }
  CBDC_RETURN_IF_ERROR(d->sync_registry());
  return d;
}

Status Deployment::sync_registry() {
  auto keys = net::MintClient(transport_, kMintEndpoint).keys();
  if (!keys.ok()) return keys.error();
  CBDC_ASSIGN_OR_RETURN(registry_, mint::RegistryView::from_keys(*keys));
  return ok_status();
}

void Deployment::set_tracers(
    const std::function<Tracer(const std::string&)>& make) {
  mint_->set_tracer(make(kMintEndpoint));
  for (int b = 0; b < banks(); ++b) gateways_[b]->set_tracer(make(bank_id(b)));
  for (int c = 0; c < customers(); ++c) {
    wallets_[c]->set_tracer(make(customer_id(c)));
  }
  for (int m = 0; m < merchants(); ++m) {
    merchants_[m]->set_tracer(make(merchant_id(m)));
  }
}

}  // namespace cbdc::sim
