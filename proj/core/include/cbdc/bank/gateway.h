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

#ifndef CBDC_BANK_GATEWAY_H_
#define CBDC_BANK_GATEWAY_H_

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/bytes.h"
#include "cbdc/crypto/group.h"
#include "cbdc/mint/denomination.h"
#include "cbdc/net/transport.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"
#include "cbdc/trace.h"
#include "cbdc/wire/messages.h"

namespace cbdc::bank {

// No limit configured.
inline constexpr Amount kUnlimited = Amount(INT64_MAX);

struct CustomerConfig {
  std::string id;
  std::string secret;
  Amount balance;
  Amount daily_limit = kUnlimited;
};

struct MerchantConfig {
  std::string id;
  Amount inbound_limit = kUnlimited;
};

struct GatewayConfig {
  std::string bank_id;
  // Signing key scalar; drawn from the gateway's generator when absent.
  std::optional<crypto::BigInt> signing_key;
  std::vector<CustomerConfig> customers;
  std::vector<MerchantConfig> merchants;

  // {"bank_id": "...", "signing_key": "<hex>", "customers": [{"id",
  // "secret", "balance": "10.00", "daily_limit": "5.00"}], "merchants":
  // [{"id", "inbound_limit"}]}
  static Result<GatewayConfig> from_json(const std::string& text);
};

struct CustomerAccount {
  std::string id;
  std::string secret;
  Amount balance;
  Amount withdrawn_today;
  Amount daily_limit = kUnlimited;
};

struct MerchantAccount {
  std::string id;
  Amount balance;
  Amount received_today;
  Amount inbound_limit = kUnlimited;
};

// What the gateway keeps about a withdrawal: the blinded value only.
struct WithdrawalRecord {
  std::string customer_id;
  Hash256 denom_id{};
  Bytes f_blinded;
  Bytes s_blinded;
  Amount value;
};

class Gateway {
 public:
  Gateway(GatewayConfig config, const crypto::GroupParams& group,
          net::MintClient mint, Drbg rng);

  const std::string& bank_id() const { return bank_id_; }
  const crypto::BigInt& signing_pub() const { return key_.pub; }
  void set_tracer(Tracer t) { tracer_ = std::move(t); }

  Result<wire::WithdrawResp> withdraw_for_customer(
      const std::string& customer_id, const std::string& credential,
      const wire::WithdrawReq& req);
  Result<wire::DepositResp> forward_deposit(const wire::DepositReq& req);
  Result<wire::RefundResp> forward_refund(const std::string& customer_id,
                                          const std::string& credential,
                                          const wire::RefundReq& req);
  void day_rollover();

  Result<CustomerAccount> customer(const std::string& id) const;
  Result<MerchantAccount> merchant(const std::string& id) const;
  std::vector<WithdrawalRecord> withdrawal_log() const;
  Amount total_customer_debits() const;
  Amount total_rollbacks() const;
  Amount total_relayed() const;

  // Every countersignature this gateway sent, for verification.
  std::vector<wire::WithdrawReq> forwarded() const;

 private:
  Status authenticate(const std::string& id, const std::string& credential);
  Result<Amount> denomination_value(const Hash256& denom_id);

  std::string bank_id_;
  crypto::GroupParams group_;
  crypto::GroupKeyPair key_;
  net::MintClient mint_;
  Tracer tracer_;

  mutable std::mutex mu_;
  Drbg rng_;
  std::map<std::string, CustomerAccount> customers_;
  std::map<std::string, MerchantAccount> merchants_;
  std::map<Hash256, WithdrawalRecord> withdrawals_;
  std::set<Hash256> credited_deposits_;
  std::set<Bytes> credited_refunds_;
  std::vector<wire::WithdrawReq> forwarded_;
  std::optional<mint::RegistryView> registry_;
  Amount debits_;
  Amount rollbacks_;
  Amount relayed_;
};

// Endpoints /withdraw and /refund (CustomerReq wrapping the mint request)
// and /deposit-forward (DepositReq).
class GatewayService {
 public:
  explicit GatewayService(Gateway& gateway) : gateway_(gateway) {}
  Bytes handle(const std::string& path, ByteView request);

 private:
  Gateway& gateway_;
};

}  // namespace cbdc::bank

#endif  // CBDC_BANK_GATEWAY_H_
