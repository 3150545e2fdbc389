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

#include "cbdc/crypto/group.h"

namespace cbdc::crypto {

namespace {

BigInt hash_to_scalar(const GroupParams& params, ByteView r, ByteView pub,
                      ByteView msg) {
  Hash256 h = sha256({as_view("cbdc-schnorr"), r, pub, msg});
  return mod(from_bytes(h), params.q);
}

}  // namespace

Status GroupParams::validate(bool check_primality) const {
  if (p < 5 || q < 2 || g <= 1 || g >= p) {
    return make_error(ErrorCode::kConfigError, "group parameters out of range");
  }
  if (mod(p - 1, q) != 0) {
    return make_error(ErrorCode::kConfigError, "q does not divide p-1");
  }
  if (powm(g, q, p) != 1) {
    return make_error(ErrorCode::kConfigError, "g does not have order q");
  }
  if (check_primality && (!is_probable_prime(p) || !is_probable_prime(q))) {
    return make_error(ErrorCode::kConfigError, "p or q is composite");
  }
  return ok_status();
}

bool is_subgroup_element(const GroupParams& params, const BigInt& x) {
  return x > 1 && x < params.p && powm(x, params.q, params.p) == 1;
}

BigInt group_public(const GroupParams& params, const BigInt& priv) {
  return powm(params.g, priv, params.p);
}

GroupKeyPair group_keygen(const GroupParams& params, Drbg& rng) {
  BigInt priv = 1 + random_below(params.q - 1, rng);
  return GroupKeyPair{priv, group_public(params, priv)};
}

Bytes encode_element(const GroupParams& params, const BigInt& x) {
  return to_fixed_bytes(x, params.element_width());
}

Bytes encode_scalar(const GroupParams& params, const BigInt& x) {
  return to_fixed_bytes(x, params.scalar_width());
}

Result<TransferSecret> kx(const BigInt& priv, const BigInt& peer_pub,
                          const GroupParams& params) {
  if (!is_subgroup_element(params, peer_pub)) {
    return make_error(ErrorCode::kInvalidPoint,
                      "peer key outside the prime-order subgroup");
  }
  return TransferSecret{
      encode_element(params, powm(peer_pub, priv, params.p))};
}

Bytes CoinSignature::encode(const GroupParams& params) const {
  Bytes out = encode_scalar(params, challenge);
  append(out, encode_scalar(params, response));
  return out;
}

Result<CoinSignature> CoinSignature::decode(const GroupParams& params,
                                            ByteView b) {
  std::size_t w = params.scalar_width();
  if (b.size() != 2 * w) {
    return make_error(ErrorCode::kBadCoinSignature, "signature length");
  }
  CoinSignature sig{from_bytes(b.first(w)), from_bytes(b.subspan(w))};
  if (sig.challenge >= params.q || sig.response >= params.q) {
    return make_error(ErrorCode::kBadCoinSignature, "signature out of range");
  }
  return sig;
}

CoinSignature coin_sign(const BigInt& priv, ByteView msg,
                        const GroupParams& params, Drbg& rng) {
  BigInt pub = group_public(params, priv);
  Bytes pub_bytes = encode_element(params, pub);
  for (;;) {
    BigInt k = 1 + random_below(params.q - 1, rng);
    Bytes r = encode_element(params, powm(params.g, k, params.p));
    BigInt e = hash_to_scalar(params, r, pub_bytes, msg);
    BigInt s = mod(k + e * priv, params.q);
    if (e != 0) return CoinSignature{e, s};
  }
}

bool coin_sig_verify(const BigInt& pub, ByteView msg, const CoinSignature& sig,
                     const GroupParams& params) {
  if (!is_subgroup_element(params, pub)) return false;
  if (sig.challenge <= 0 || sig.challenge >= params.q || sig.response < 0 ||
      sig.response >= params.q) {
    return false;
  }
  // R = g^s * pub^(q-e)
  BigInt r = mod(powm(params.g, sig.response, params.p) *
                     powm(pub, params.q - sig.challenge, params.p),
                 params.p);
  BigInt e = hash_to_scalar(params, encode_element(params, r),
                            encode_element(params, pub), msg);
  return e == sig.challenge;
}

bool coin_sig_verify(const BigInt& pub, ByteView msg, ByteView sig,
                     const GroupParams& params) {
  auto decoded = CoinSignature::decode(params, sig);
  return decoded.ok() && coin_sig_verify(pub, msg, *decoded, params);
}

RefreshDerivation derive_refresh(const TransferSecret& secret,
                                 const RsaPublicKey& denom_pub,
                                 const GroupParams& params) {
  RefreshDerivation out;
  Bytes blind_input = secret.k;
  append(blind_input, as_view("blind"));
  out.blinding.b = fdh(denom_pub.n, blind_input);

  // Expand 64 bits beyond |q| so the reduction bias is negligible.
  const std::size_t want = params.scalar_width() + 8;
  Bytes wide;
  for (std::uint32_t block = 0; wide.size() < want; ++block) {
    Bytes ctr;
    append_u32(ctr, block);
    append(wide, sha256({as_view("cbdc-refresh-coin"), ctr, secret.k,
                         as_view("coin")}));
  }
  wide.resize(want);
  out.coin_priv = 1 + mod(from_bytes(wide), params.q - 1);
  return out;
}

}  // namespace cbdc::crypto
