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

#ifndef CBDC_CRYPTO_BIGINT_H_
#define CBDC_CRYPTO_BIGINT_H_

#include <gmpxx.h>

#include <cstddef>
#include <string>

#include "cbdc/bytes.h"
#include "cbdc/rng.h"

namespace cbdc::crypto {

using BigInt = mpz_class;

std::size_t bit_length(const BigInt& x);
// Bytes needed to hold values below `modulus`.
std::size_t byte_width(const BigInt& modulus);

// Fixed-width big-endian encoding. Throws ContractViolation when `x` is
// negative or does not fit.
Bytes to_fixed_bytes(const BigInt& x, std::size_t width);
BigInt from_bytes(ByteView be);

BigInt from_hex_string(const std::string& hex);
std::string to_hex_string(const BigInt& x);

BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& mod);
BigInt gcd(const BigInt& a, const BigInt& b);
// Inverse of a modulo m; throws ContractViolation if none exists.
BigInt invert(const BigInt& a, const BigInt& m);
BigInt mod(const BigInt& a, const BigInt& m);

// Uniform in [0, bound), bound > 0.
BigInt random_below(const BigInt& bound, Drbg& rng);
// Random prime of exactly `bits` bits with the top two bits set, so the
// product of two such primes has exactly 2*bits bits.
BigInt random_prime(std::size_t bits, Drbg& rng);
bool is_probable_prime(const BigInt& x);

}  // namespace cbdc::crypto

#endif  // CBDC_CRYPTO_BIGINT_H_
