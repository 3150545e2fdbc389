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

#ifndef CBDC_SIM_FIXTURES_H_
#define CBDC_SIM_FIXTURES_H_

#include <cstdint>
#include <map>
#include <string>

#include "cbdc/bytes.h"
#include "cbdc/crypto/params.h"
#include "cbdc/status.h"
#include "cbdc/wire/messages.h"

namespace cbdc::sim {

// One encoded envelope per message type, taken from a scripted run of every
// protocol flow. Deterministic for a given seed and mode.
Result<std::map<wire::MsgType, Bytes>> golden_messages(
    std::uint64_t seed, crypto::CryptoMode mode = crypto::CryptoMode::kFull);

// "<NN>_<TypeName>.bin", NN the two-digit type code.
std::string fixture_file_name(wire::MsgType type);

Status write_fixtures(const std::map<wire::MsgType, Bytes>& messages,
                      const std::string& dir);
Result<std::map<wire::MsgType, Bytes>> read_fixtures(const std::string& dir);

}  // namespace cbdc::sim

#endif  // CBDC_SIM_FIXTURES_H_
