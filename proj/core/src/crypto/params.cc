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

#include "cbdc/crypto/params.h"

namespace cbdc::crypto {

namespace {

GroupParams make_group(const char* p, const char* q, const char* g) {
  return GroupParams{from_hex_string(p), from_hex_string(q),
                     from_hex_string(g)};
}

}  // namespace

std::string_view crypto_mode_name(CryptoMode mode) {
  return mode == CryptoMode::kFull ? "full" : "toy";
}

std::optional<CryptoMode> parse_crypto_mode(std::string_view name) {
  if (name == "toy") return CryptoMode::kToy;
  if (name == "full") return CryptoMode::kFull;
  return std::nullopt;
}

GroupParams tiny_group() { return GroupParams{23, 11, 2}; }

// Label "cbdc-group-512-160".
const GroupParams& group_512_160() {
  static const GroupParams params = make_group(
      "9e7a15762e975104bd1985e2c0714daf122b28221d7c30865580d67565b61393"
      "bed1eb7c3f53e7b53498d66792f4584677e71a942e803ba3784d55010bf1cab1",
      "ff0549c542f57692adbcc47ff8728283619432b5",
      "6c698a1e0914bdadf5f8120e8feaae9dcec535d65b1a51513008a162785bf590"
      "18b72c5dca6c794a2767fd8eabdfd97d76c592baf0e1b34d5c7ac5b770fb1810");
  return params;
}

// Label "cbdc-group-2048-256".
const GroupParams& group_2048_256() {
  static const GroupParams params = make_group(
      "c30205064cb2a8d1908194754ade1ff71d9f0251cbdbb62b086bc2517ec46c9e"
      "1b9ecc81ea8585e822a12ee91422b0bc71c363507bcab7b379515a7adac51ee6"
      "5f298a1fffb4ac09213fe13f1dcab8403eacff493e233bf2266035ed91b9253d"
      "6e969803c1b428e538e3d7afe255f2a9f92ff2bda88de3dc7619ae6d5d700362"
      "aaf172571a608ca6d114285a2d7c6b84f87170122d5b254dd4fbee5eb1acf52c"
      "2e87f0633f5f7567c5f0e3ca8fc17031781b0614cd2d11e16ab02c1827e74d6c"
      "0fb17e42e6e07545685975ccac74cb3d14eafc7d610555afbcc7e1e6c57b702e"
      "686319b23fbb3981e5e794322c61299bd034dcea45ab9469bd61ec869b1b6777",
      "b17bf46f50586b9791e51f44ddc4ed92a2bd2f4a42cab54ce4006d6da7b0e279",
      "69ecd9a5a1a8e7b33dfe0f4dd412cb17f8708a24ee8f8485287e7391e3b2bf92"
      "647e7f7ff2e1f5f700b39d1a106f3b1c113fb3b2904fe1c90a393f1e40e48fe8"
      "28d4046fc2f321734b02b773f0e75441aca6201a1d0bf70185850d1af4eecbb0"
      "6ad492b0ff79689f29b3c72b622ed61cab5ebad9b9eb1d51bf289db222a49856"
      "d85e9381bb39d7a703c2fae97a363a3d8388969ae0a55e5f70ce5806e382ac1b"
      "a7405ba89a4345c5b635a20d78ec9fb990c51ab00dfa831b71d7919ac45d0900"
      "0fac2bfe0fa785c781c731d2e992cf0bf8cb4a9710ea30b64322438e03df7a85"
      "090a291c97d92ea72ec350efd6924a6c8b363ec0e5cf8e7d0bed8ed1f44ea964");
  return params;
}

const CryptoProfile& crypto_profile(CryptoMode mode) {
  static const CryptoProfile toy{CryptoMode::kToy, 512, BigInt(3),
                                 group_512_160()};
  static const CryptoProfile full{CryptoMode::kFull, 2048, BigInt(65537),
                                  group_2048_256()};
  return mode == CryptoMode::kFull ? full : toy;
}

}  // namespace cbdc::crypto
