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

#ifndef CBDC_WALLET_WALLET_H_
#define CBDC_WALLET_WALLET_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/clock.h"
#include "cbdc/mint/denomination.h"
#include "cbdc/net/transport.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"
#include "cbdc/trace.h"
#include "cbdc/wallet/coin.h"
#include "cbdc/wire/messages.h"

namespace cbdc::wallet {

struct WalletConfig {
  std::string customer_id;
  std::string credential;
  int kappa = 3;
  // sweep() refreshes coins whose deposit_end is at most this far away.
  Timestamp sweep_window = 7 * 86400;
  // Attempts per request when the transport reports Unavailable.
  int max_attempts = 4;
};

struct PaymentPart {
  Bytes coin_pub;
  Amount amount;
};

struct PaymentPlan {
  Hash256 contract_hash{};
  std::vector<PaymentPart> parts;
  Amount total;
};

struct RefundOutcome {
  Bytes coin_pub;
  Result<Amount> result = Amount::zero();
};

struct RecoveryReport {
  Amount refunded;
  std::vector<RefundOutcome> coins;
};

// Withdrawal whose blind signature was not obtained or did not verify.
struct PendingWithdrawal {
  Coin coin;
  Bytes f_blinded;
  std::optional<Error> last_error;
};

class Wallet {
 public:
  Wallet(WalletConfig config, net::MintClient mint, net::GatewayClient gateway,
         const Clock& clock, Drbg rng);

  const WalletConfig& config() const { return config_; }
  void set_kappa(int kappa) { config_.kappa = kappa; }
  void set_tracer(Tracer t) { tracer_ = std::move(t); }

  // Fetches the published registry from the mint.
  Status sync_keys();
  const mint::RegistryView& registry() const;

  // Greedy largest-first exact decomposition over withdrawable
  // denominations.
  static Result<std::vector<const mint::DenominationInfo*>> plan_withdrawal(
      Amount amount, const mint::RegistryView& registry, Timestamp now);

  Result<std::vector<Coin>> withdraw(Amount amount);
  Result<Coin> withdraw_denomination(const mint::DenominationInfo& denom);

  // Largest residual first, ties by coin_pub byte order.
  Result<PaymentPlan> plan_payment(const wire::ContractTerms& contract) const;
  Result<std::vector<wire::DepositReq>> pay(const wire::ContractTerms& contract,
                                            const PaymentPlan& plan);
  Result<wire::Payment> pay(const wire::ContractTerms& contract);

  Result<Coin> refresh(ByteView coin_pub, const Hash256& target_denom_id);
  // Targets for turning `residual` into change; fees included.
  Result<std::vector<const mint::DenominationInfo*>> plan_change(
      Amount residual) const;
  // Refreshes repeatedly until the coin's residual is used up.
  Result<std::vector<Coin>> refresh_residual(ByteView coin_pub);

  Result<std::vector<Coin>> derive_linked_change(const Coin& original);
  RecoveryReport recover_revoked(const wire::RevocationNotice& notice);
  Result<std::vector<Coin>> sweep(Timestamp now);

  // Retries withdrawals left pending by transport failures.
  std::size_t retry_pending();

  const std::vector<Coin>& coins() const { return coins_; }
  const Coin* find(ByteView coin_pub) const;
  Coin* find(ByteView coin_pub);
  // Adds a coin unless one with the same public key is already held.
  bool add_coin(Coin coin);
  Amount balance() const;
  const std::vector<PendingWithdrawal>& pending() const { return pending_; }
  std::size_t pending_refreshes() const { return refreshes_.size(); }
  const std::vector<PendingWithdrawal>& disputes() const { return disputes_; }

  Bytes serialize() const;
  Status restore(ByteView file);
  Status save(const std::string& path) const;
  Status load(const std::string& path);

 private:
  struct PendingRefresh {
    RefreshBuild build;
    std::optional<wire::RefreshChallenge> challenge;
    Amount need;
  };

  template <typename F>
  auto with_retry(F&& fn) -> decltype(fn());
  Result<Coin> complete_withdrawal(PendingWithdrawal& p);
  Result<Coin> complete_refresh(PendingRefresh& p);
  const mint::DenominationInfo* denom(const Hash256& id) const;

  WalletConfig config_;
  net::MintClient mint_;
  net::GatewayClient gateway_;
  const Clock& clock_;
  Drbg rng_;
  Tracer tracer_;
  std::optional<mint::RegistryView> registry_;
  std::vector<Coin> coins_;
  std::vector<PendingWithdrawal> pending_;
  std::vector<PendingWithdrawal> disputes_;
  std::vector<PendingRefresh> refreshes_;
};

}  // namespace cbdc::wallet

#endif  // CBDC_WALLET_WALLET_H_
