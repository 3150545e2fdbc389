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

#include "cbdc/wallet/coin.h"

namespace cbdc::wallet {

using crypto::BigInt;

wire::CoinFileRecord Coin::to_record(const crypto::GroupParams& group) const {
  wire::CoinFileRecord r;
  r.denom_id = denom_id;
  r.coin_priv = crypto::encode_scalar(group, priv);
  r.coin_pub = pub;
  r.denom_sig = denom_sig;
  r.blinding = blinding;
  r.face_value = face_value;
  r.local_residual = local_residual;
  r.origin = origin;
  return r;
}

Coin Coin::from_record(const wire::CoinFileRecord& r) {
  Coin c;
  c.priv = crypto::from_bytes(r.coin_priv);
  c.pub = r.coin_pub;
  c.denom_id = r.denom_id;
  c.denom_sig = r.denom_sig;
  c.blinding = r.blinding;
  c.face_value = r.face_value;
  c.local_residual = r.local_residual;
  c.origin = r.origin;
  return c;
}

bool verify_coin(const Coin& coin, const mint::DenominationInfo& denom) {
  if (coin.denom_id != denom.id || coin.denom_sig.size() != denom.pub.width()) {
    return false;
  }
  return crypto::rsa_verify(denom.pub, crypto::fdh(denom.pub.n, coin.pub),
                            crypto::from_bytes(coin.denom_sig));
}

RefreshBuild build_refresh(const Coin& coin, Amount residual_claim,
                           const mint::DenominationInfo& target, int kappa,
                           const crypto::GroupParams& group, Drbg& rng,
                           std::optional<int> corrupt_index) {
  CBDC_EXPECTS(kappa >= 1, "kappa must be positive");
  const auto& pub = target.pub;
  BigInt c_pub = crypto::from_bytes(coin.pub);
  RefreshBuild out;
  auto& req = out.request;
  req.coin_pub = coin.pub;
  req.denom_id = coin.denom_id;
  req.denom_sig = coin.denom_sig;
  req.residual_claim = residual_claim;
  req.target_denom_id = target.id;
  for (int i = 1; i <= kappa; ++i) {
    crypto::GroupKeyPair t = crypto::group_keygen(group, rng);
    auto secret = crypto::kx(t.priv, c_pub, group);
    CBDC_EXPECTS(secret.ok(), "coin key outside the group");
    crypto::RefreshDerivation d = crypto::derive_refresh(*secret, pub, group);
    if (corrupt_index && *corrupt_index == i) {
      d.coin_priv = crypto::group_keygen(group, rng).priv;
      d.blinding = crypto::sample_blinding(pub.n, rng);
    }
    Bytes change_pub =
        crypto::encode_element(group, crypto::group_public(group, d.coin_priv));
    BigInt blinded =
        crypto::blind(crypto::fdh(pub.n, change_pub), d.blinding, pub);
    req.commitments.push_back({crypto::encode_element(group, t.pub),
                               crypto::to_fixed_bytes(blinded, pub.width())});
    out.transfer_privs.push_back(t.priv);
    out.derivations.push_back(std::move(d));
    out.change_pubs.push_back(std::move(change_pub));
  }
  req.coin_sig = crypto::coin_sign(coin.priv, wire::refresh_commit_payload(req),
                                   group, rng)
                     .encode(group);
  return out;
}

wire::RefreshRevealReq build_reveal(const RefreshBuild& build,
                                    const wire::RefreshChallenge& challenge,
                                    const crypto::GroupParams& group) {
  wire::RefreshRevealReq r;
  r.coin_pub = build.request.coin_pub;
  r.session_id = challenge.session_id;
  for (std::size_t i = 0; i < build.transfer_privs.size(); ++i) {
    auto index = static_cast<std::uint8_t>(i + 1);
    if (index == challenge.gamma) continue;
    r.reveals.push_back(
        {index, crypto::encode_scalar(group, build.transfer_privs[i])});
  }
  return r;
}

Result<Coin> finish_refresh(const RefreshBuild& build,
                            const wire::RefreshChallenge& challenge,
                            const wire::RefreshRevealResp& resp,
                            const mint::DenominationInfo& target) {
  std::size_t g = challenge.gamma;
  CBDC_EXPECTS(g >= 1 && g <= build.derivations.size(), "gamma out of range");
  const auto& d = build.derivations[g - 1];
  Coin coin;
  coin.priv = d.coin_priv;
  coin.pub = build.change_pubs[g - 1];
  coin.denom_id = target.id;
  coin.denom_sig = crypto::to_fixed_bytes(
      crypto::unblind(crypto::from_bytes(resp.s_blinded), d.blinding,
                      target.pub.n),
      target.pub.width());
  coin.blinding = crypto::to_fixed_bytes(d.blinding.b, target.pub.width());
  coin.face_value = target.value;
  coin.local_residual = target.value;
  coin.origin = {wire::CoinOriginKind::kChange, challenge.session_id,
                 build.request.coin_pub, challenge.gamma};
  if (!verify_coin(coin, target)) {
    return make_error(ErrorCode::kBadMintSignature);
  }
  return coin;
}

Result<Coin> derive_change(const Coin& parent, const wire::LinkEntry& entry,
                           const mint::DenominationInfo& target,
                           const crypto::GroupParams& group) {
  auto secret = crypto::kx(parent.priv, crypto::from_bytes(entry.transfer_pub),
                           group);
  if (!secret.ok()) return secret.error();
  crypto::RefreshDerivation d = crypto::derive_refresh(*secret, target.pub, group);
  Coin coin;
  coin.priv = d.coin_priv;
  coin.pub =
      crypto::encode_element(group, crypto::group_public(group, d.coin_priv));
  coin.denom_id = target.id;
  coin.denom_sig = crypto::to_fixed_bytes(
      crypto::unblind(crypto::from_bytes(entry.s_blinded), d.blinding,
                      target.pub.n),
      target.pub.width());
  coin.blinding = crypto::to_fixed_bytes(d.blinding.b, target.pub.width());
  coin.face_value = target.value;
  coin.local_residual = target.value;
  coin.origin = {wire::CoinOriginKind::kChange, Hash256{}, parent.pub, 0};
  if (!verify_coin(coin, target)) {
    return make_error(ErrorCode::kBadMintSignature);
  }
  return coin;
}

}  // namespace cbdc::wallet
