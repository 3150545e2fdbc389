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

#ifndef CBDC_WIRE_RECORDS_H_
#define CBDC_WIRE_RECORDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/bytes.h"
#include "cbdc/clock.h"
#include "cbdc/status.h"
#include "cbdc/wire/messages.h"

namespace cbdc::wire {

// Persistent record layouts. Each has a canonical encoding used both for
// storage and for the file formats.

enum class SpendKind : std::uint8_t { kDeposit = 1, kRefresh = 2, kRefund = 3 };

struct SpentEntry {
  SpendKind kind = SpendKind::kDeposit;
  // Contract hash for deposits, session id for refreshes, zero for refunds.
  Hash256 reference{};
  std::string bank_id;
  std::string merchant_id;
  Amount amount;
  Timestamp timestamp = 0;
  // spent_total of the record right after this entry was applied.
  Amount spent_after;

  friend bool operator==(const SpentEntry&, const SpentEntry&) = default;
};

enum class SessionState : std::uint8_t {
  kCommitted = 1,
  kRevealed = 2,
  kForfeited = 3,
  kCompleted = 4,
};

struct RefreshSessionRecord {
  Hash256 session_id{};
  Amount residual_claimed;
  Hash256 target_denom_id{};
  Amount target_value;
  Amount fee;
  std::vector<Commitment> commitments;
  std::uint8_t gamma = 0;
  SessionState state = SessionState::kCommitted;
  Bytes change_blind_sig;
  Timestamp timestamp = 0;

  friend bool operator==(const RefreshSessionRecord&,
                         const RefreshSessionRecord&) = default;
};

// Mint ledger entry for one coin: cumulative spending plus the refresh
// sessions that were run against it.
struct SpentRecord {
  Bytes coin_pub;
  Hash256 denom_id{};
  Amount spent_total;
  std::vector<SpentEntry> entries;
  std::vector<RefreshSessionRecord> sessions;

  const RefreshSessionRecord* find_session(const Hash256& id) const;
  RefreshSessionRecord* find_session(const Hash256& id);

  friend bool operator==(const SpentRecord&, const SpentRecord&) = default;
};

Bytes encode_spent_record(const SpentRecord& r);
Result<SpentRecord> decode_spent_record(ByteView b);

enum class IssuanceOrigin : std::uint8_t { kWithdrawal = 1, kRefresh = 2 };

// Mint-side log of one blind signature, keyed by SHA-256 of the blinded
// value. Holds only the blinded value's hash context, never C.
struct IssuanceRecord {
  IssuanceOrigin origin = IssuanceOrigin::kWithdrawal;
  Hash256 denom_id{};
  std::string bank_id;
  Timestamp timestamp = 0;
  Bytes s_blinded;

  friend bool operator==(const IssuanceRecord&,
                         const IssuanceRecord&) = default;
};

Bytes encode_issuance_record(const IssuanceRecord& r);
Result<IssuanceRecord> decode_issuance_record(ByteView b);

enum class CoinOriginKind : std::uint8_t { kWithdrawn = 1, kChange = 2 };

struct CoinOrigin {
  CoinOriginKind kind = CoinOriginKind::kWithdrawn;
  // Withdrawn: SHA-256 of f'. Change: the refresh session id.
  Hash256 id{};
  // Change only.
  Bytes parent_coin_pub;
  std::uint8_t gamma = 0;

  friend bool operator==(const CoinOrigin&, const CoinOrigin&) = default;
};

// Wallet persistence record; integers are fixed-width big-endian.
struct CoinFileRecord {
  Hash256 denom_id{};
  Bytes coin_priv;
  Bytes coin_pub;
  Bytes denom_sig;
  Bytes blinding;
  Amount face_value;
  Amount local_residual;
  CoinOrigin origin;

  friend bool operator==(const CoinFileRecord&,
                         const CoinFileRecord&) = default;
};

Bytes encode_coin_record(const CoinFileRecord& r);
Result<CoinFileRecord> decode_coin_record(ByteView b);

inline constexpr char kWalletMagic[8] = {'C', 'B', 'D', 'C', 'W', 'L', 'T', 0};
inline constexpr std::uint16_t kWalletFileVersion = 1;

// magic(8) | version(2) | count(4) | { len(4) | coin record }*
Bytes encode_wallet_file(const std::vector<CoinFileRecord>& coins);
Result<std::vector<CoinFileRecord>> decode_wallet_file(ByteView b);

}  // namespace cbdc::wire

#endif  // CBDC_WIRE_RECORDS_H_
