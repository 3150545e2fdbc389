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

#include "cbdc/crypto/rsa.h"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/param_build.h>
#include <openssl/rsa.h>

#include <stdexcept>

namespace cbdc::crypto {

namespace {

// Moduli below this size take the GMP path.
constexpr std::size_t kAcceleratorMinBits = 1024;

struct BnDeleter {
  void operator()(BIGNUM* bn) const { BN_free(bn); }
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;

BnPtr to_bn(const BigInt& x) {
  Bytes be = to_fixed_bytes(x, byte_width(x) == 0 ? 1 : byte_width(x));
  return BnPtr(BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr));
}

}  // namespace

class RsaAccelerator {
 public:
  static std::shared_ptr<const RsaAccelerator> create(const RsaPrivateKey& k) {
    OSSL_PARAM_BLD* bld = OSSL_PARAM_BLD_new();
    if (bld == nullptr) return nullptr;
    BnPtr n = to_bn(k.n), e = to_bn(k.e), d = to_bn(k.d), p = to_bn(k.p),
          q = to_bn(k.q), dp = to_bn(k.dp), dq = to_bn(k.dq),
          qi = to_bn(k.q_inv);
    bool ok =
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_N, n.get()) &&
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_E, e.get()) &&
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_D, d.get()) &&
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_FACTOR1, p.get()) &&
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_FACTOR2, q.get()) &&
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_EXPONENT1, dp.get()) &&
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_EXPONENT2, dq.get()) &&
        OSSL_PARAM_BLD_push_BN(bld, OSSL_PKEY_PARAM_RSA_COEFFICIENT1, qi.get());
    OSSL_PARAM* params = ok ? OSSL_PARAM_BLD_to_param(bld) : nullptr;
    OSSL_PARAM_BLD_free(bld);
    if (params == nullptr) return nullptr;

    EVP_PKEY* pkey = nullptr;
    EVP_PKEY_CTX* ctx = EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr);
    if (ctx != nullptr && EVP_PKEY_fromdata_init(ctx) == 1) {
      EVP_PKEY_fromdata(ctx, &pkey, EVP_PKEY_KEYPAIR, params);
    }
    EVP_PKEY_CTX_free(ctx);
    OSSL_PARAM_free(params);
    if (pkey == nullptr) return nullptr;
    return std::shared_ptr<const RsaAccelerator>(
        new RsaAccelerator(pkey, byte_width(k.n)));
  }

  ~RsaAccelerator() { EVP_PKEY_free(pkey_); }

  // Raw private operation; nullopt if OpenSSL refuses the input.
  std::optional<BigInt> private_op(const BigInt& m) const {
    Bytes in = to_fixed_bytes(m, width_);
    Bytes out(width_);
    std::size_t out_len = out.size();
    EVP_PKEY_CTX* ctx = EVP_PKEY_CTX_new(pkey_, nullptr);
    bool ok = ctx != nullptr && EVP_PKEY_sign_init(ctx) == 1 &&
              EVP_PKEY_CTX_set_rsa_padding(ctx, RSA_NO_PADDING) == 1 &&
              EVP_PKEY_sign(ctx, out.data(), &out_len, in.data(), in.size()) ==
                  1;
    EVP_PKEY_CTX_free(ctx);
    if (!ok) return std::nullopt;
    return from_bytes(ByteView(out.data(), out_len));
  }

 private:
  RsaAccelerator(EVP_PKEY* pkey, std::size_t width)
      : pkey_(pkey), width_(width) {}

  EVP_PKEY* pkey_;
  std::size_t width_;
};

Result<RsaKeyPair> rsa_key_from_primes(const BigInt& p, const BigInt& q,
                                       const BigInt& e) {
  if (p == q) return make_error(ErrorCode::kKeygenFailed, "p == q");
  BigInt phi = (p - 1) * (q - 1);
  if (e <= 1 || e >= phi || gcd(e, phi) != 1) {
    return make_error(ErrorCode::kKeygenFailed, "e not a unit mod phi(n)");
  }
  RsaKeyPair kp;
  kp.pub.e = e;
  kp.pub.n = p * q;
  RsaPrivateKey& k = kp.priv;
  k.e = e;
  k.n = kp.pub.n;
  k.d = invert(e, phi);
  k.p = p;
  k.q = q;
  k.dp = mod(k.d, p - 1);
  k.dq = mod(k.d, q - 1);
  k.q_inv = invert(q, p);
  if (bit_length(k.n) >= kAcceleratorMinBits) k.accel = RsaAccelerator::create(k);
  return kp;
}

Result<RsaKeyPair> rsa_keygen(std::size_t bits, const BigInt& e,
                              const PrimeSampler& sampler, int max_attempts) {
  CBDC_EXPECTS(bits >= 6 && bits % 2 == 0, "RSA bits must be even");
  CBDC_EXPECTS(e >= 3 && mpz_odd_p(e.get_mpz_t()), "e must be odd and >= 3");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    BigInt p = sampler(bits / 2);
    BigInt q = sampler(bits / 2);
    auto kp = rsa_key_from_primes(p, q, e);
    if (kp.ok()) return kp;
  }
  return make_error(ErrorCode::kKeygenFailed, "retries exhausted");
}

Result<RsaKeyPair> rsa_keygen(std::size_t bits, const BigInt& e, Drbg& rng,
                              int max_attempts) {
  return rsa_keygen(
      bits, e, [&rng](std::size_t b) { return random_prime(b, rng); },
      max_attempts);
}

BigInt rsa_sign_portable(const RsaPrivateKey& priv, const BigInt& m) {
  CBDC_EXPECTS(m >= 0 && m < priv.n, "message out of range; apply FDH first");
  BigInt s1 = powm(mod(m, priv.p), priv.dp, priv.p);
  BigInt s2 = powm(mod(m, priv.q), priv.dq, priv.q);
  BigInt h = mod(priv.q_inv * (s1 - s2), priv.p);
  return s2 + h * priv.q;
}

BigInt rsa_sign(const RsaPrivateKey& priv, const BigInt& m) {
  CBDC_EXPECTS(m >= 0 && m < priv.n, "message out of range; apply FDH first");
  if (priv.accel) {
    if (auto s = priv.accel->private_op(m)) return *std::move(s);
  }
  return rsa_sign_portable(priv, m);
}

bool rsa_verify(const RsaPublicKey& pub, const BigInt& m, const BigInt& s) {
  if (m < 0 || m >= pub.n || s < 0 || s >= pub.n) return false;
  return powm(s, pub.e, pub.n) == m;
}

bool is_valid_blinding(const BigInt& b, const BigInt& n) {
  return b >= 1 && b < n && gcd(b, n) == 1;
}

BlindingFactor sample_blinding(const BigInt& n, Drbg& rng) {
  CBDC_EXPECTS(n >= 3, "modulus too small");
  for (;;) {
    BigInt b = random_below(n, rng);
    if (is_valid_blinding(b, n)) return BlindingFactor{b};
  }
}

BigInt blind(const BigInt& f, const BlindingFactor& b,
             const RsaPublicKey& pub) {
  CBDC_EXPECTS(f >= 0 && f < pub.n, "value out of range");
  return mod(f * powm(b.b, pub.e, pub.n), pub.n);
}

BigInt blind_sign(const RsaPrivateKey& priv, const BigInt& f_blinded) {
  return rsa_sign(priv, f_blinded);
}

BigInt unblind(const BigInt& s_blinded, const BlindingFactor& b,
               const BigInt& n) {
  return mod(s_blinded * invert(b.b, n), n);
}

BigInt fdh(const BigInt& n, ByteView msg) {
  CBDC_EXPECTS(n >= 3, "modulus too small");
  const std::size_t bits = bit_length(n);
  const std::size_t nbytes = (bits + 7) / 8;
  const unsigned excess = static_cast<unsigned>(nbytes * 8 - bits);
  const Bytes n_bytes = to_fixed_bytes(n, nbytes);
  Bytes n_len;
  append_u32(n_len, static_cast<std::uint32_t>(nbytes));
  for (std::uint32_t attempt = 0; attempt < 256; ++attempt) {
    Bytes out;
    for (std::uint32_t block = 0; out.size() < nbytes; ++block) {
      Bytes ctr;
      append_u32(ctr, attempt);
      append_u32(ctr, block);
      Hash256 h =
          sha256({as_view("cbdc-fdh"), ctr, n_len, n_bytes, msg});
      append(out, h);
    }
    out.resize(nbytes);
    out[0] &= static_cast<std::uint8_t>(0xff >> excess);
    BigInt f = from_bytes(out);
    if (f >= 1 && f < n && gcd(f, n) == 1) return f;
  }
  throw std::runtime_error("fdh: no unit found in 256 attempts");
}

}  // namespace cbdc::crypto
