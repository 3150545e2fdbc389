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

#ifndef CBDC_MINT_DENOMINATION_H_
#define CBDC_MINT_DENOMINATION_H_

#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/bytes.h"
#include "cbdc/clock.h"
#include "cbdc/crypto/group.h"
#include "cbdc/crypto/params.h"
#include "cbdc/crypto/rsa.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"
#include "cbdc/wire/messages.h"

namespace cbdc::mint {

struct DenominationSpec {
  Amount value;
  Timestamp withdraw_start = 0;
  Timestamp withdraw_end = 0;
  Timestamp deposit_end = 0;
  Timestamp legal_end = 0;
  Amount refresh_fee;
};

// Public view of one denomination, as published and as wallets see it.
struct DenominationInfo {
  Hash256 id{};
  Amount value;
  crypto::RsaPublicKey pub;
  Timestamp withdraw_start = 0;
  Timestamp withdraw_end = 0;
  Timestamp deposit_end = 0;
  Timestamp legal_end = 0;
  Amount refresh_fee;
  bool revoked = false;

  bool can_withdraw(Timestamp now) const {
    return !revoked && now >= withdraw_start && now <= withdraw_end;
  }
  bool can_deposit(Timestamp now) const {
    return !revoked && now <= deposit_end;
  }
  wire::DenomInfo to_wire() const;
};

struct DenominationKey {
  DenominationInfo info;
  crypto::RsaPrivateKey priv;
};

// SHA-256 over the canonical public-key encoding (e and n at modulus
// width).
Hash256 denomination_id(const crypto::RsaPublicKey& pub);

// Client-side registry built from a published Keys message.
class RegistryView {
 public:
  static Result<RegistryView> from_keys(const wire::Keys& keys);

  const crypto::GroupParams& group() const { return group_; }
  const std::vector<DenominationInfo>& denominations() const {
    return denoms_;
  }
  const DenominationInfo* find(const Hash256& id) const;
  // Withdrawable denominations at `now`, largest value first; for equal
  // values the one with the latest withdraw_end wins.
  std::vector<const DenominationInfo*> withdrawable(Timestamp now) const;

 private:
  crypto::GroupParams group_;
  std::vector<DenominationInfo> denoms_;
};

// Mint-side registry: owns the private keys. Keys are immutable after
// setup; only the revoked flags change.
class DenominationRegistry {
 public:
  static Result<DenominationRegistry> setup(
      const std::vector<DenominationSpec>& schedule,
      const crypto::CryptoProfile& profile, Drbg& rng);
  static Result<DenominationRegistry> from_keys(
      std::vector<DenominationKey> keys, crypto::GroupParams group);

  DenominationRegistry(DenominationRegistry&& other) noexcept;

  const crypto::GroupParams& group() const { return group_; }
  std::size_t size() const { return keys_.size(); }

  // NotFound for unknown ids.
  Result<const DenominationKey*> find(const Hash256& id) const;
  std::vector<const DenominationKey*> by_value(Amount value) const;
  const std::vector<DenominationKey>& keys() const { return keys_; }

  bool is_revoked(const Hash256& id) const;
  // Idempotent. NotFound for unknown ids.
  Status revoke(const Hash256& id);
  // Snapshot of the public view, private exponents excluded.
  DenominationInfo info(const DenominationKey& key) const;

  wire::Keys published_keys() const;
  // Canonical JSON listing {denom_id, value, e, n, windows, refresh_fee,
  // revoked} per denomination, integers as fixed-width lowercase hex.
  std::string published_document() const;
  Hash256 version() const;

 private:
  DenominationRegistry(std::vector<DenominationKey> keys,
                       crypto::GroupParams group)
      : keys_(std::move(keys)), group_(std::move(group)) {}

  std::vector<DenominationKey> keys_;
  crypto::GroupParams group_;
  mutable std::shared_mutex revoked_mu_;
  std::unordered_set<std::string> revoked_;
};

Status validate_schedule(const std::vector<DenominationSpec>& schedule);

}  // namespace cbdc::mint

#endif  // CBDC_MINT_DENOMINATION_H_
