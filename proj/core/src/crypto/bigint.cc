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

#include "cbdc/crypto/bigint.h"

#include "cbdc/status.h"

namespace cbdc::crypto {

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::size_t byte_width(const BigInt& modulus) {
  return (bit_length(modulus) + 7) / 8;
}

Bytes to_fixed_bytes(const BigInt& x, std::size_t width) {
  CBDC_EXPECTS(x >= 0, "negative integer has no unsigned encoding");
  CBDC_EXPECTS((bit_length(x) + 7) / 8 <= width, "integer exceeds width");
  Bytes out(width, 0);
  std::size_t count = 0;
  if (x != 0) {
    Bytes tmp((bit_length(x) + 7) / 8);
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
    std::copy(tmp.begin(), tmp.begin() + count, out.end() - count);
  }
  return out;
}

BigInt from_bytes(ByteView be) {
  BigInt x;
  if (!be.empty()) mpz_import(x.get_mpz_t(), be.size(), 1, 1, 1, 0, be.data());
  return x;
}

BigInt from_hex_string(const std::string& hex) { return BigInt(hex, 16); }

std::string to_hex_string(const BigInt& x) { return x.get_str(16); }

BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& mod) {
  CBDC_EXPECTS(exp >= 0, "negative exponent");
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt invert(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw ContractViolation("no modular inverse");
  }
  return r;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt random_below(const BigInt& bound, Drbg& rng) {
  CBDC_EXPECTS(bound > 0, "random_below bound must be positive");
  std::size_t bits = bit_length(bound);
  std::size_t nbytes = (bits + 7) / 8;
  unsigned excess = static_cast<unsigned>(nbytes * 8 - bits);
  Bytes buf(nbytes);
  for (;;) {
    rng.fill(buf);
    buf[0] &= static_cast<std::uint8_t>(0xff >> excess);
    BigInt x = from_bytes(buf);
    if (x < bound) return x;
  }
}

bool is_probable_prime(const BigInt& x) {
  return mpz_probab_prime_p(x.get_mpz_t(), 40) > 0;
}

BigInt random_prime(std::size_t bits, Drbg& rng) {
  CBDC_EXPECTS(bits >= 3, "prime too small");
  std::size_t nbytes = (bits + 7) / 8;
  unsigned excess = static_cast<unsigned>(nbytes * 8 - bits);
  Bytes buf(nbytes);
  for (;;) {
    rng.fill(buf);
    buf[0] &= static_cast<std::uint8_t>(0xff >> excess);
    BigInt x = from_bytes(buf);
    mpz_setbit(x.get_mpz_t(), bits - 1);
    if (bits >= 2) mpz_setbit(x.get_mpz_t(), bits - 2);
    mpz_setbit(x.get_mpz_t(), 0);
    // Walk odd candidates upwards while the top bits stay intact.
    for (; bit_length(x) == bits; x += 2) {
      if (is_probable_prime(x)) return x;
    }
  }
}

}  // namespace cbdc::crypto
