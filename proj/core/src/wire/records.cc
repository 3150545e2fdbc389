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

#include "cbdc/wire/records.h"

#include <algorithm>

namespace cbdc::wire {

namespace {

constexpr std::uint8_t kSpentRecordVersion = 1;
constexpr std::uint8_t kIssuanceRecordVersion = 1;
constexpr std::uint8_t kCoinRecordVersion = 1;

template <typename E>
E read_enum(Reader& r, std::uint8_t lo, std::uint8_t hi) {
  std::uint8_t v = r.u8();
  if (v < lo || v > hi) r.fail();
  return static_cast<E>(v);
}

Error malformed(const char* what) {
  return make_error(ErrorCode::kMalformedMessage, what);
}

}  // namespace

const RefreshSessionRecord* SpentRecord::find_session(const Hash256& id) const {
  auto it = std::find_if(sessions.begin(), sessions.end(),
                         [&](const auto& s) { return s.session_id == id; });
  return it == sessions.end() ? nullptr : &*it;
}

RefreshSessionRecord* SpentRecord::find_session(const Hash256& id) {
  return const_cast<RefreshSessionRecord*>(
      static_cast<const SpentRecord*>(this)->find_session(id));
}

Bytes encode_spent_record(const SpentRecord& rec) {
  Writer w;
  w.u8(kSpentRecordVersion);
  w.var_bytes(rec.coin_pub);
  w.hash(rec.denom_id);
  w.amount(rec.spent_total);
  w.count(rec.entries.size());
  for (const SpentEntry& e : rec.entries) {
    w.u8(static_cast<std::uint8_t>(e.kind));
    w.hash(e.reference);
    w.str(e.bank_id);
    w.str(e.merchant_id);
    w.amount(e.amount);
    w.i64(e.timestamp);
    w.amount(e.spent_after);
  }
  w.count(rec.sessions.size());
  for (const RefreshSessionRecord& s : rec.sessions) {
    w.hash(s.session_id);
    w.amount(s.residual_claimed);
    w.hash(s.target_denom_id);
    w.amount(s.target_value);
    w.amount(s.fee);
    w.count(s.commitments.size());
    for (const Commitment& c : s.commitments) c.encode(w);
    w.u8(s.gamma);
    w.u8(static_cast<std::uint8_t>(s.state));
    w.var_bytes(s.change_blind_sig);
    w.i64(s.timestamp);
  }
  return std::move(w).take();
}

Result<SpentRecord> decode_spent_record(ByteView b) {
  Reader r(b);
  if (r.u8() != kSpentRecordVersion) return malformed("spent record version");
  SpentRecord rec;
  rec.coin_pub = r.var_bytes();
  rec.denom_id = r.hash();
  rec.spent_total = r.amount();
  for (std::uint16_t i = 0, n = r.count(); i < n && r.ok(); ++i) {
    SpentEntry e;
    e.kind = read_enum<SpendKind>(r, 1, 3);
    e.reference = r.hash();
    e.bank_id = r.str();
    e.merchant_id = r.str();
    e.amount = r.amount();
    e.timestamp = r.i64();
    e.spent_after = r.amount();
    rec.entries.push_back(std::move(e));
  }
  for (std::uint16_t i = 0, n = r.count(); i < n && r.ok(); ++i) {
    RefreshSessionRecord s;
    s.session_id = r.hash();
    s.residual_claimed = r.amount();
    s.target_denom_id = r.hash();
    s.target_value = r.amount();
    s.fee = r.amount();
    for (std::uint16_t j = 0, m = r.count(); j < m && r.ok(); ++j) {
      s.commitments.push_back(Commitment::decode(r));
    }
    s.gamma = r.u8();
    s.state = read_enum<SessionState>(r, 1, 4);
    s.change_blind_sig = r.var_bytes();
    s.timestamp = r.i64();
    rec.sessions.push_back(std::move(s));
  }
  if (!r.ok() || !r.at_end()) return malformed("spent record");
  return rec;
}

Bytes encode_issuance_record(const IssuanceRecord& rec) {
  Writer w;
  w.u8(kIssuanceRecordVersion);
  w.u8(static_cast<std::uint8_t>(rec.origin));
  w.hash(rec.denom_id);
  w.str(rec.bank_id);
  w.i64(rec.timestamp);
  w.var_bytes(rec.s_blinded);
  return std::move(w).take();
}

Result<IssuanceRecord> decode_issuance_record(ByteView b) {
  Reader r(b);
  if (r.u8() != kIssuanceRecordVersion) {
    return malformed("issuance record version");
  }
  IssuanceRecord rec;
  rec.origin = read_enum<IssuanceOrigin>(r, 1, 2);
  rec.denom_id = r.hash();
  rec.bank_id = r.str();
  rec.timestamp = r.i64();
  rec.s_blinded = r.var_bytes();
  if (!r.ok() || !r.at_end()) return malformed("issuance record");
  return rec;
}

namespace {

void encode_coin_fields(Writer& w, const CoinFileRecord& c) {
  w.u8(kCoinRecordVersion);
  w.hash(c.denom_id);
  w.var_bytes(c.coin_priv);
  w.var_bytes(c.coin_pub);
  w.var_bytes(c.denom_sig);
  w.var_bytes(c.blinding);
  w.amount(c.face_value);
  w.amount(c.local_residual);
  w.u8(static_cast<std::uint8_t>(c.origin.kind));
  w.hash(c.origin.id);
  w.var_bytes(c.origin.parent_coin_pub);
  w.u8(c.origin.gamma);
}

CoinFileRecord decode_coin_fields(Reader& r) {
  CoinFileRecord c;
  if (r.u8() != kCoinRecordVersion) r.fail();
  c.denom_id = r.hash();
  c.coin_priv = r.var_bytes();
  c.coin_pub = r.var_bytes();
  c.denom_sig = r.var_bytes();
  c.blinding = r.var_bytes();
  c.face_value = r.amount();
  c.local_residual = r.amount();
  c.origin.kind = read_enum<CoinOriginKind>(r, 1, 2);
  c.origin.id = r.hash();
  c.origin.parent_coin_pub = r.var_bytes();
  c.origin.gamma = r.u8();
  return c;
}

}  // namespace

Bytes encode_coin_record(const CoinFileRecord& rec) {
  Writer w;
  encode_coin_fields(w, rec);
  return std::move(w).take();
}

Result<CoinFileRecord> decode_coin_record(ByteView b) {
  Reader r(b);
  CoinFileRecord c = decode_coin_fields(r);
  if (!r.ok() || !r.at_end()) return malformed("coin record");
  return c;
}

Bytes encode_wallet_file(const std::vector<CoinFileRecord>& coins) {
  Writer w;
  w.raw(ByteView(reinterpret_cast<const std::uint8_t*>(kWalletMagic),
                 sizeof kWalletMagic));
  w.u16(kWalletFileVersion);
  w.u32(static_cast<std::uint32_t>(coins.size()));
  for (const CoinFileRecord& c : coins) {
    Bytes rec = encode_coin_record(c);
    w.u32(static_cast<std::uint32_t>(rec.size()));
    w.raw(rec);
  }
  return std::move(w).take();
}

Result<std::vector<CoinFileRecord>> decode_wallet_file(ByteView b) {
  Reader r(b);
  Bytes magic = r.raw(sizeof kWalletMagic);
  if (!r.ok() || !std::equal(magic.begin(), magic.end(), kWalletMagic)) {
    return malformed("wallet magic");
  }
  if (r.u16() != kWalletFileVersion) {
    return make_error(ErrorCode::kUnknownVersion, "wallet file version");
  }
  std::uint32_t n = r.u32();
  std::vector<CoinFileRecord> coins;
  for (std::uint32_t i = 0; i < n && r.ok(); ++i) {
    std::uint32_t len = r.u32();
    if (len > r.remaining()) return malformed("wallet record length");
    Bytes rec = r.raw(len);
    CBDC_ASSIGN_OR_RETURN(CoinFileRecord c, decode_coin_record(rec));
    coins.push_back(std::move(c));
  }
  if (!r.ok() || !r.at_end()) return malformed("wallet file");
  return coins;
}

}  // namespace cbdc::wire
