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

#ifndef CBDC_CRYPTO_RSA_H_
#define CBDC_CRYPTO_RSA_H_

#include <cstddef>
#include <functional>
#include <memory>

#include "cbdc/bytes.h"
#include "cbdc/crypto/bigint.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"

namespace cbdc::crypto {

struct RsaPublicKey {
  BigInt e;
  BigInt n;

  std::size_t width() const { return byte_width(n); }
  friend bool operator==(const RsaPublicKey& a, const RsaPublicKey& b) {
    return a.e == b.e && a.n == b.n;
  }
};

// Opaque handle to an OpenSSL key used to speed up the private operation
// for production-size moduli.
class RsaAccelerator;

struct RsaPrivateKey {
  BigInt d;
  BigInt p;
  BigInt q;
  BigInt n;
  BigInt e;
  // CRT components.
  BigInt dp;
  BigInt dq;
  BigInt q_inv;
  std::shared_ptr<const RsaAccelerator> accel;
};

struct RsaKeyPair {
  RsaPublicKey pub;
  RsaPrivateKey priv;
};

// Builds a key from explicit primes. Fails with KeygenFailed when p == q or
// when e is not a unit modulo (p-1)(q-1).
Result<RsaKeyPair> rsa_key_from_primes(const BigInt& p, const BigInt& q,
                                       const BigInt& e);

using PrimeSampler = std::function<BigInt(std::size_t bits)>;

// Samples primes of bits/2 bits each until e is coprime to phi(n), giving up
// after `max_attempts` pairs.
Result<RsaKeyPair> rsa_keygen(std::size_t bits, const BigInt& e,
                              const PrimeSampler& sampler,
                              int max_attempts = 64);
Result<RsaKeyPair> rsa_keygen(std::size_t bits, const BigInt& e, Drbg& rng,
                              int max_attempts = 64);

// m^d mod n. Requires 0 <= m < n.
BigInt rsa_sign(const RsaPrivateKey& priv, const BigInt& m);
// Same value via GMP CRT only, bypassing the accelerator.
BigInt rsa_sign_portable(const RsaPrivateKey& priv, const BigInt& m);
bool rsa_verify(const RsaPublicKey& pub, const BigInt& m, const BigInt& s);

struct BlindingFactor {
  BigInt b;
};

// Uniform over the units of Z/nZ.
BlindingFactor sample_blinding(const BigInt& n, Drbg& rng);
bool is_valid_blinding(const BigInt& b, const BigInt& n);

// f * b^e mod n
BigInt blind(const BigInt& f, const BlindingFactor& b, const RsaPublicKey& pub);
// (f')^d mod n
BigInt blind_sign(const RsaPrivateKey& priv, const BigInt& f_blinded);
// s' * b^-1 mod n
BigInt unblind(const BigInt& s_blinded, const BlindingFactor& b,
               const BigInt& n);

// Full-domain hash onto the unit group of Z/nZ: SHA-256 in counter mode,
// expanded to the bit length of n, rejection-sampled. Throws
// std::runtime_error if 256 candidates are all rejected.
BigInt fdh(const BigInt& n, ByteView msg);

}  // namespace cbdc::crypto

#endif  // CBDC_CRYPTO_RSA_H_
