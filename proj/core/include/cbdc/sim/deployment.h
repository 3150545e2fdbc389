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

#ifndef CBDC_SIM_DEPLOYMENT_H_
#define CBDC_SIM_DEPLOYMENT_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cbdc/bank/gateway.h"
#include "cbdc/crypto/params.h"
#include "cbdc/merchant/merchant.h"
#include "cbdc/mint/mint.h"
#include "cbdc/net/transport.h"
#include "cbdc/wallet/wallet.h"

namespace cbdc::sim {

inline constexpr char kMintEndpoint[] = "mint";

struct DeploymentConfig {
  crypto::CryptoMode mode = crypto::CryptoMode::kToy;
  std::vector<mint::DenominationSpec> schedule;
  std::size_t shards = 1;
  // Empty keeps the mint stores in memory.
  std::string store_dir;
  int banks = 1;
  // Spread round-robin over the banks.
  int customers = 1;
  int merchants = 1;
  Amount customer_balance = Amount(100'000);
  Amount daily_limit = bank::kUnlimited;
  Amount merchant_inbound_limit = bank::kUnlimited;
  Amount bank_reserves = Amount(1'000'000'000);
  int kappa = 3;
  mint::MintConfig mint;
  std::uint64_t seed = 1;
};

// Schedule with the given values, all sharing one set of windows starting
// at `start`.
std::vector<mint::DenominationSpec> make_schedule(
    const std::vector<Amount>& values, Timestamp start,
    Amount refresh_fee = Amount::zero(), std::int64_t withdraw_days = 365,
    std::int64_t deposit_days = 730, std::int64_t legal_days = 1095);

std::string bank_id(int index);
std::string customer_id(int index);
std::string merchant_id(int index);

// One mint, its banks, and the wallets and merchants attached to them,
// wired over a transport.
class Deployment {
 public:
  static Result<std::unique_ptr<Deployment>> create(
      const DeploymentConfig& config, net::Transport& transport,
      const Clock& clock, merchant::Sleeper sleep = {});

  // Tracers are created per actor name.
  void set_tracers(const std::function<Tracer(const std::string&)>& make);

  mint::Mint& mint() { return *mint_; }
  bank::Gateway& gateway(int i) { return *gateways_.at(i); }
  wallet::Wallet& wallet(int i) { return *wallets_.at(i); }
  merchant::Merchant& merchant(int i) { return *merchants_.at(i); }
  int bank_of_customer(int i) const { return i % config_.banks; }
  int bank_of_merchant(int i) const { return i % config_.banks; }
  int customers() const { return static_cast<int>(wallets_.size()); }
  int merchants() const { return static_cast<int>(merchants_.size()); }
  int banks() const { return static_cast<int>(gateways_.size()); }
  const DeploymentConfig& config() const { return config_; }

  // Public registry as merchants see it; refetched by sync_registry().
  const mint::RegistryView& registry() const { return registry_; }
  Status sync_registry();

  net::Transport& transport() { return transport_; }
  const Clock& clock() const { return clock_; }

 private:
  Deployment(DeploymentConfig config, net::Transport& transport,
             const Clock& clock)
      : config_(std::move(config)), transport_(transport), clock_(clock) {}

  DeploymentConfig config_;
  net::Transport& transport_;
  const Clock& clock_;
  std::unique_ptr<mint::Mint> mint_;
  std::unique_ptr<mint::MintService> mint_service_;
  std::vector<std::unique_ptr<bank::Gateway>> gateways_;
  std::vector<std::unique_ptr<bank::GatewayService>> gateway_services_;
  std::vector<std::unique_ptr<wallet::Wallet>> wallets_;
  std::vector<std::unique_ptr<merchant::Merchant>> merchants_;
  mint::RegistryView registry_;
};

}  // namespace cbdc::sim

#endif  // CBDC_SIM_DEPLOYMENT_H_
