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

#ifndef CBDC_CRYPTO_PARAMS_H_
#define CBDC_CRYPTO_PARAMS_H_

#include <cstddef>
#include <optional>
#include <string_view>

#include "cbdc/crypto/group.h"

namespace cbdc::crypto {

// kFull: 2048-bit RSA denominations, 2048-bit group with a 256-bit subgroup.
// kToy: 512-bit RSA with e = 3 and a 512/160-bit group; fast enough for
// thousands of simulated protocol runs, still collision-free in practice.
// The exhaustive n = 55 / p = 23 vectors are reached through the explicit
// constructors below, not through a mode.
enum class CryptoMode { kToy, kFull };

std::string_view crypto_mode_name(CryptoMode mode);
std::optional<CryptoMode> parse_crypto_mode(std::string_view name);

struct CryptoProfile {
  CryptoMode mode;
  std::size_t rsa_bits;
  BigInt rsa_e;
  GroupParams group;
};

const CryptoProfile& crypto_profile(CryptoMode mode);

// p = 23, q = 11, g = 2.
GroupParams tiny_group();

// Group parameters derived by tools/gen_group_params.py.
const GroupParams& group_512_160();
const GroupParams& group_2048_256();

}  // namespace cbdc::crypto

#endif  // CBDC_CRYPTO_PARAMS_H_
