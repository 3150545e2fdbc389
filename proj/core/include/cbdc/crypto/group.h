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

#ifndef CBDC_CRYPTO_GROUP_H_
#define CBDC_CRYPTO_GROUP_H_

#include <cstddef>

#include "cbdc/bytes.h"
#include "cbdc/crypto/bigint.h"
#include "cbdc/crypto/rsa.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"

namespace cbdc::crypto {

// Prime-order-q subgroup of Z_p^*, generated by g. Coin keys, transfer
// keys, gateway keys and the key exchange all live here.
struct GroupParams {
  BigInt p;
  BigInt q;
  BigInt g;

  // Byte width of group elements and of scalars.
  std::size_t element_width() const { return byte_width(p); }
  std::size_t scalar_width() const { return byte_width(q); }

  // q | p-1, g != 1, g^q == 1. With `check_primality`, also that p and q are
  // probable primes.
  Status validate(bool check_primality = false) const;

  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.p == b.p && a.q == b.q && a.g == b.g;
  }
};

struct GroupKeyPair {
  BigInt priv;
  BigInt pub;
};

// 1 < x < p and x^q == 1 (mod p).
bool is_subgroup_element(const GroupParams& params, const BigInt& x);

BigInt group_public(const GroupParams& params, const BigInt& priv);
GroupKeyPair group_keygen(const GroupParams& params, Drbg& rng);

Bytes encode_element(const GroupParams& params, const BigInt& x);
Bytes encode_scalar(const GroupParams& params, const BigInt& x);

// Canonical fixed-width encoding of a shared Diffie-Hellman element.
struct TransferSecret {
  Bytes k;
  friend bool operator==(const TransferSecret&, const TransferSecret&) =
      default;
};

// peer_pub^priv mod p after checking subgroup membership of peer_pub.
Result<TransferSecret> kx(const BigInt& priv, const BigInt& peer_pub,
                          const GroupParams& params);

// Schnorr signature (challenge, response) with SHA-256 challenges.
struct CoinSignature {
  BigInt challenge;
  BigInt response;

  Bytes encode(const GroupParams& params) const;
  static Result<CoinSignature> decode(const GroupParams& params, ByteView b);
  friend bool operator==(const CoinSignature& a, const CoinSignature& b) {
    return a.challenge == b.challenge && a.response == b.response;
  }
};

CoinSignature coin_sign(const BigInt& priv, ByteView msg,
                        const GroupParams& params, Drbg& rng);
bool coin_sig_verify(const BigInt& pub, ByteView msg, const CoinSignature& sig,
                     const GroupParams& params);
// Convenience: decodes the wire form first; malformed signatures fail.
bool coin_sig_verify(const BigInt& pub, ByteView msg, ByteView sig,
                     const GroupParams& params);

// Blinding factor and coin private key derived from a transfer secret for
// one target denomination.
struct RefreshDerivation {
  BlindingFactor blinding;
  BigInt coin_priv;
};

RefreshDerivation derive_refresh(const TransferSecret& secret,
                                 const RsaPublicKey& denom_pub,
                                 const GroupParams& params);

}  // namespace cbdc::crypto

#endif  // CBDC_CRYPTO_GROUP_H_
