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

#ifndef CBDC_WALLET_COIN_H_
#define CBDC_WALLET_COIN_H_

#include <optional>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/bytes.h"
#include "cbdc/crypto/group.h"
#include "cbdc/crypto/rsa.h"
#include "cbdc/mint/denomination.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"
#include "cbdc/wire/messages.h"
#include "cbdc/wire/records.h"

namespace cbdc::wallet {

struct Coin {
  crypto::BigInt priv;
  Bytes pub;
  Hash256 denom_id{};
  Bytes denom_sig;
  // Kept for refunds after revocation.
  Bytes blinding;
  Amount face_value;
  Amount local_residual;
  wire::CoinOrigin origin;

  wire::CoinFileRecord to_record(const crypto::GroupParams& group) const;
  static Coin from_record(const wire::CoinFileRecord& r);
};

bool verify_coin(const Coin& coin, const mint::DenominationInfo& denom);

// Everything the wallet needs to finish or reconstruct one refresh.
struct RefreshBuild {
  wire::RefreshCommitReq request;
  std::vector<crypto::BigInt> transfer_privs;
  std::vector<crypto::RefreshDerivation> derivations;
  std::vector<Bytes> change_pubs;
};

// Builds kappa commitments for refreshing `coin` into `target`. With
// `corrupt_index` (1-based) that commitment blinds an independent coin key
// instead of the one derived from the transfer secret, so the resulting
// change would not be reachable through link.
RefreshBuild build_refresh(const Coin& coin, Amount residual_claim,
                           const mint::DenominationInfo& target, int kappa,
                           const crypto::GroupParams& group, Drbg& rng,
                           std::optional<int> corrupt_index = std::nullopt);

wire::RefreshRevealReq build_reveal(const RefreshBuild& build,
                                    const wire::RefreshChallenge& challenge,
                                    const crypto::GroupParams& group);

// Unblinds the returned signature into the change coin.
Result<Coin> finish_refresh(const RefreshBuild& build,
                            const wire::RefreshChallenge& challenge,
                            const wire::RefreshRevealResp& resp,
                            const mint::DenominationInfo& target);

// Rebuilds a change coin from link data using the parent's private key.
Result<Coin> derive_change(const Coin& parent, const wire::LinkEntry& entry,
                           const mint::DenominationInfo& target,
                           const crypto::GroupParams& group);

}  // namespace cbdc::wallet

#endif  // CBDC_WALLET_COIN_H_
