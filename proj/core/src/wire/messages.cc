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

#include "cbdc/wire/messages.h"

namespace cbdc::wire {

namespace {

template <typename T>
void encode_list(Writer& w, const std::vector<T>& items) {
  w.count(items.size());
  for (const T& item : items) item.encode(w);
}

template <typename T, typename F>
std::vector<T> decode_list(Reader& r, F decode_one) {
  std::uint16_t n = r.count();
  std::vector<T> out;
  for (std::uint16_t i = 0; i < n && r.ok(); ++i) out.push_back(decode_one(r));
  return out;
}

}  // namespace

void DenomInfo::encode(Writer& w) const {
  w.hash(denom_id);
  w.amount(value);
  w.var_bytes(e);
  w.var_bytes(n);
  w.i64(withdraw_start);
  w.i64(withdraw_end);
  w.i64(deposit_end);
  w.i64(legal_end);
  w.amount(refresh_fee);
  w.boolean(revoked);
}

DenomInfo DenomInfo::decode(Reader& r) {
  DenomInfo d;
  d.denom_id = r.hash();
  d.value = r.amount();
  d.e = r.var_bytes();
  d.n = r.var_bytes();
  d.withdraw_start = r.i64();
  d.withdraw_end = r.i64();
  d.deposit_end = r.i64();
  d.legal_end = r.i64();
  d.refresh_fee = r.amount();
  d.revoked = r.boolean();
  return d;
}

void Keys::encode_body(Writer& w) const {
  w.var_bytes(group_p);
  w.var_bytes(group_q);
  w.var_bytes(group_g);
  encode_list(w, denominations);
}

Keys Keys::decode_body(Reader& r) {
  Keys k;
  k.group_p = r.var_bytes();
  k.group_q = r.var_bytes();
  k.group_g = r.var_bytes();
  k.denominations = decode_list<DenomInfo>(r, DenomInfo::decode);
  return k;
}

void WithdrawReq::encode_body(Writer& w) const {
  w.str(bank_id);
  w.hash(denom_id);
  w.var_bytes(f_blinded);
  w.var_bytes(countersig);
}

WithdrawReq WithdrawReq::decode_body(Reader& r) {
  WithdrawReq m;
  m.bank_id = r.str();
  m.denom_id = r.hash();
  m.f_blinded = r.var_bytes();
  m.countersig = r.var_bytes();
  return m;
}

void WithdrawResp::encode_body(Writer& w) const { w.var_bytes(s_blinded); }

WithdrawResp WithdrawResp::decode_body(Reader& r) {
  return WithdrawResp{r.var_bytes()};
}

void DepositReq::encode_body(Writer& w) const {
  w.var_bytes(coin_pub);
  w.hash(denom_id);
  w.var_bytes(denom_sig);
  w.amount(amount);
  w.hash(contract_hash);
  w.str(merchant_bank);
  w.str(merchant_id);
  w.var_bytes(coin_sig);
}

DepositReq DepositReq::decode_body(Reader& r) {
  DepositReq m;
  m.coin_pub = r.var_bytes();
  m.denom_id = r.hash();
  m.denom_sig = r.var_bytes();
  m.amount = r.amount();
  m.contract_hash = r.hash();
  m.merchant_bank = r.str();
  m.merchant_id = r.str();
  m.coin_sig = r.var_bytes();
  return m;
}

void DepositResp::encode_body(Writer& w) const {
  w.var_bytes(coin_pub);
  w.hash(contract_hash);
  w.amount(amount);
  w.amount(spent_total);
  w.i64(timestamp);
}

DepositResp DepositResp::decode_body(Reader& r) {
  DepositResp m;
  m.coin_pub = r.var_bytes();
  m.contract_hash = r.hash();
  m.amount = r.amount();
  m.spent_total = r.amount();
  m.timestamp = r.i64();
  return m;
}

void Commitment::encode(Writer& w) const {
  w.var_bytes(transfer_pub);
  w.var_bytes(blinded_change);
}

Commitment Commitment::decode(Reader& r) {
  Commitment c;
  c.transfer_pub = r.var_bytes();
  c.blinded_change = r.var_bytes();
  return c;
}

namespace {
void encode_commit_fields(Writer& w, const RefreshCommitReq& m) {
  w.var_bytes(m.coin_pub);
  w.hash(m.denom_id);
  w.var_bytes(m.denom_sig);
  w.amount(m.residual_claim);
  w.hash(m.target_denom_id);
  encode_list(w, m.commitments);
}
}  // namespace

void RefreshCommitReq::encode_body(Writer& w) const {
  encode_commit_fields(w, *this);
  w.var_bytes(coin_sig);
}

RefreshCommitReq RefreshCommitReq::decode_body(Reader& r) {
  RefreshCommitReq m;
  m.coin_pub = r.var_bytes();
  m.denom_id = r.hash();
  m.denom_sig = r.var_bytes();
  m.residual_claim = r.amount();
  m.target_denom_id = r.hash();
  m.commitments = decode_list<Commitment>(r, Commitment::decode);
  m.coin_sig = r.var_bytes();
  return m;
}

void RefreshChallenge::encode_body(Writer& w) const {
  w.hash(session_id);
  w.u8(gamma);
}

RefreshChallenge RefreshChallenge::decode_body(Reader& r) {
  RefreshChallenge m;
  m.session_id = r.hash();
  m.gamma = r.u8();
  return m;
}

void Reveal::encode(Writer& w) const {
  w.u8(index);
  w.var_bytes(transfer_priv);
}

Reveal Reveal::decode(Reader& r) {
  Reveal v;
  v.index = r.u8();
  v.transfer_priv = r.var_bytes();
  return v;
}

void RefreshRevealReq::encode_body(Writer& w) const {
  w.var_bytes(coin_pub);
  w.hash(session_id);
  encode_list(w, reveals);
}

RefreshRevealReq RefreshRevealReq::decode_body(Reader& r) {
  RefreshRevealReq m;
  m.coin_pub = r.var_bytes();
  m.session_id = r.hash();
  m.reveals = decode_list<Reveal>(r, Reveal::decode);
  return m;
}

void RefreshRevealResp::encode_body(Writer& w) const {
  w.hash(session_id);
  w.var_bytes(s_blinded);
}

RefreshRevealResp RefreshRevealResp::decode_body(Reader& r) {
  RefreshRevealResp m;
  m.session_id = r.hash();
  m.s_blinded = r.var_bytes();
  return m;
}

void LinkReq::encode_body(Writer& w) const { w.var_bytes(coin_pub); }

LinkReq LinkReq::decode_body(Reader& r) { return LinkReq{r.var_bytes()}; }

void LinkEntry::encode(Writer& w) const {
  w.var_bytes(transfer_pub);
  w.var_bytes(s_blinded);
  w.hash(target_denom_id);
}

LinkEntry LinkEntry::decode(Reader& r) {
  LinkEntry e;
  e.transfer_pub = r.var_bytes();
  e.s_blinded = r.var_bytes();
  e.target_denom_id = r.hash();
  return e;
}

void LinkResp::encode_body(Writer& w) const { encode_list(w, entries); }

LinkResp LinkResp::decode_body(Reader& r) {
  return LinkResp{decode_list<LinkEntry>(r, LinkEntry::decode)};
}

void RevocationNotice::encode_body(Writer& w) const { w.hash(denom_id); }

RevocationNotice RevocationNotice::decode_body(Reader& r) {
  return RevocationNotice{r.hash()};
}

void RefundReq::encode_body(Writer& w) const {
  w.var_bytes(coin_pub);
  w.hash(denom_id);
  w.var_bytes(denom_sig);
  w.var_bytes(blinding);
  w.str(bank_id);
}

RefundReq RefundReq::decode_body(Reader& r) {
  RefundReq m;
  m.coin_pub = r.var_bytes();
  m.denom_id = r.hash();
  m.denom_sig = r.var_bytes();
  m.blinding = r.var_bytes();
  m.bank_id = r.str();
  return m;
}

void RefundResp::encode_body(Writer& w) const {
  w.var_bytes(coin_pub);
  w.amount(refunded);
}

RefundResp RefundResp::decode_body(Reader& r) {
  RefundResp m;
  m.coin_pub = r.var_bytes();
  m.refunded = r.amount();
  return m;
}

ErrorMsg ErrorMsg::from(const Error& e) {
  std::string msg = e.message.substr(0, 1024);
  return ErrorMsg{static_cast<std::uint16_t>(e.code),
                  static_cast<std::uint16_t>(e.inner), std::move(msg)};
}

Error ErrorMsg::to_error() const {
  return Error{static_cast<ErrorCode>(code), message,
               static_cast<ErrorCode>(inner)};
}

void ErrorMsg::encode_body(Writer& w) const {
  w.u16(code);
  w.u16(inner);
  w.str(message);
}

ErrorMsg ErrorMsg::decode_body(Reader& r) {
  ErrorMsg m;
  m.code = r.u16();
  m.inner = r.u16();
  m.message = r.str();
  return m;
}

void AuditReq::encode_body(Writer& w) const { w.hash(denom_id); }

AuditReq AuditReq::decode_body(Reader& r) { return AuditReq{r.hash()}; }

void AuditResp::encode_body(Writer& w) const {
  w.hash(denom_id);
  w.u64(issued_count);
  w.amount(issued_value);
  w.amount(change_issued_value);
  w.amount(deposited_value);
  w.amount(refunded_value);
  w.amount(forfeited_value);
  w.amount(melted_value);
  w.amount(reserved_value);
  w.boolean(violation);
}

AuditResp AuditResp::decode_body(Reader& r) {
  AuditResp m;
  m.denom_id = r.hash();
  m.issued_count = r.u64();
  m.issued_value = r.amount();
  m.change_issued_value = r.amount();
  m.deposited_value = r.amount();
  m.refunded_value = r.amount();
  m.forfeited_value = r.amount();
  m.melted_value = r.amount();
  m.reserved_value = r.amount();
  m.violation = r.boolean();
  return m;
}

void CustomerReq::encode_body(Writer& w) const {
  w.str(customer_id);
  w.str(credential);
  w.var_bytes(inner);
}

CustomerReq CustomerReq::decode_body(Reader& r) {
  CustomerReq m;
  m.customer_id = r.str();
  m.credential = r.str();
  m.inner = r.var_bytes();
  return m;
}

void ContractTerms::encode(Writer& w) const {
  w.str(bank_id);
  w.str(merchant_id);
  w.amount(amount);
  w.var_bytes(description);
  w.hash(nonce);
}

ContractTerms ContractTerms::decode(Reader& r) {
  ContractTerms c;
  c.bank_id = r.str();
  c.merchant_id = r.str();
  c.amount = r.amount();
  c.description = r.var_bytes();
  c.nonce = r.hash();
  return c;
}

Hash256 ContractTerms::hash() const {
  Writer w;
  w.raw(as_view("cbdc-contract"));
  encode(w);
  return sha256(w.bytes());
}

void Payment::encode_body(Writer& w) const {
  contract.encode(w);
  w.count(parts.size());
  for (const DepositReq& p : parts) p.encode_body(w);
}

Payment Payment::decode_body(Reader& r) {
  Payment m;
  m.contract = ContractTerms::decode(r);
  m.parts = decode_list<DepositReq>(r, DepositReq::decode_body);
  return m;
}

void PartStatus::encode(Writer& w) const {
  w.var_bytes(coin_pub);
  w.u16(code);
  w.u16(inner);
}

PartStatus PartStatus::decode(Reader& r) {
  PartStatus s;
  s.coin_pub = r.var_bytes();
  s.code = r.u16();
  s.inner = r.u16();
  return s;
}

void Settlement::encode_body(Writer& w) const {
  w.hash(contract_hash);
  w.boolean(delivered);
  encode_list(w, parts);
}

Settlement Settlement::decode_body(Reader& r) {
  Settlement m;
  m.contract_hash = r.hash();
  m.delivered = r.boolean();
  m.parts = decode_list<PartStatus>(r, PartStatus::decode);
  return m;
}

MsgType message_type(const Message& m) {
  return std::visit([](const auto& v) { return v.kType; }, m);
}

std::string_view msg_type_name(MsgType t) {
  switch (t) {
    case MsgType::kKeys: return "Keys";
    case MsgType::kWithdrawReq: return "WithdrawReq";
    case MsgType::kWithdrawResp: return "WithdrawResp";
    case MsgType::kDepositReq: return "DepositReq";
    case MsgType::kDepositResp: return "DepositResp";
    case MsgType::kRefreshCommitReq: return "RefreshCommitReq";
    case MsgType::kRefreshChallenge: return "RefreshChallenge";
    case MsgType::kRefreshRevealReq: return "RefreshRevealReq";
    case MsgType::kRefreshRevealResp: return "RefreshRevealResp";
    case MsgType::kLinkReq: return "LinkReq";
    case MsgType::kLinkResp: return "LinkResp";
    case MsgType::kRevocationNotice: return "RevocationNotice";
    case MsgType::kRefundReq: return "RefundReq";
    case MsgType::kRefundResp: return "RefundResp";
    case MsgType::kError: return "Error";
    case MsgType::kKeysReq: return "KeysReq";
    case MsgType::kAuditReq: return "AuditReq";
    case MsgType::kAuditResp: return "AuditResp";
    case MsgType::kCustomerReq: return "CustomerReq";
    case MsgType::kPayment: return "Payment";
    case MsgType::kSettlement: return "Settlement";
  }
  return "Unknown";
}

Bytes encode(const Message& m) {
  Writer body;
  std::visit([&body](const auto& v) { v.encode_body(body); }, m);
  Writer w;
  w.u8(kWireVersion);
  w.u8(static_cast<std::uint8_t>(message_type(m)));
  w.u32(static_cast<std::uint32_t>(body.bytes().size()));
  w.raw(body.bytes());
  return std::move(w).take();
}

namespace {

template <typename T>
Result<Message> decode_body_as(ByteView body) {
  Reader r(body);
  T value = T::decode_body(r);
  if (!r.ok() || !r.at_end()) {
    return make_error(ErrorCode::kMalformedMessage,
                      std::string(msg_type_name(T::kType)) + " body");
  }
  return Message(std::move(value));
}

}  // namespace

Result<Message> decode(ByteView bytes) {
  if (bytes.size() < kEnvelopeHeaderSize) {
    return make_error(ErrorCode::kMalformedMessage, "short envelope");
  }
  if (bytes[0] != kWireVersion) {
    return make_error(ErrorCode::kUnknownVersion);
  }
  std::uint32_t len = static_cast<std::uint32_t>(bytes[2]) << 24 |
                      static_cast<std::uint32_t>(bytes[3]) << 16 |
                      static_cast<std::uint32_t>(bytes[4]) << 8 | bytes[5];
  if (len != bytes.size() - kEnvelopeHeaderSize) {
    return make_error(ErrorCode::kMalformedMessage, "body length mismatch");
  }
  ByteView body = bytes.subspan(kEnvelopeHeaderSize);
  switch (static_cast<MsgType>(bytes[1])) {
    case MsgType::kKeys: return decode_body_as<Keys>(body);
    case MsgType::kWithdrawReq: return decode_body_as<WithdrawReq>(body);
    case MsgType::kWithdrawResp: return decode_body_as<WithdrawResp>(body);
    case MsgType::kDepositReq: return decode_body_as<DepositReq>(body);
    case MsgType::kDepositResp: return decode_body_as<DepositResp>(body);
    case MsgType::kRefreshCommitReq:
      return decode_body_as<RefreshCommitReq>(body);
    case MsgType::kRefreshChallenge:
      return decode_body_as<RefreshChallenge>(body);
    case MsgType::kRefreshRevealReq:
      return decode_body_as<RefreshRevealReq>(body);
    case MsgType::kRefreshRevealResp:
      return decode_body_as<RefreshRevealResp>(body);
    case MsgType::kLinkReq: return decode_body_as<LinkReq>(body);
    case MsgType::kLinkResp: return decode_body_as<LinkResp>(body);
    case MsgType::kRevocationNotice:
      return decode_body_as<RevocationNotice>(body);
    case MsgType::kRefundReq: return decode_body_as<RefundReq>(body);
    case MsgType::kRefundResp: return decode_body_as<RefundResp>(body);
    case MsgType::kError: return decode_body_as<ErrorMsg>(body);
    case MsgType::kKeysReq: return decode_body_as<KeysReq>(body);
    case MsgType::kAuditReq: return decode_body_as<AuditReq>(body);
    case MsgType::kAuditResp: return decode_body_as<AuditResp>(body);
    case MsgType::kCustomerReq: return decode_body_as<CustomerReq>(body);
    case MsgType::kPayment: return decode_body_as<Payment>(body);
    case MsgType::kSettlement: return decode_body_as<Settlement>(body);
  }
  return make_error(ErrorCode::kUnknownType);
}

Bytes withdraw_auth_payload(const Hash256& denom_id, ByteView f_blinded) {
  Writer w;
  w.raw(as_view("cbdc-withdraw-auth"));
  w.hash(denom_id);
  w.var_bytes(f_blinded);
  return std::move(w).take();
}

Bytes deposit_payload(const Hash256& contract_hash,
                      const std::string& merchant_bank,
                      const std::string& merchant_id, Amount amount) {
  Writer w;
  w.raw(as_view("cbdc-deposit"));
  w.hash(contract_hash);
  w.str(merchant_bank);
  w.str(merchant_id);
  w.amount(amount);
  return std::move(w).take();
}

Bytes refresh_commit_payload(const RefreshCommitReq& req) {
  Writer w;
  w.raw(as_view("cbdc-refresh-commit"));
  encode_commit_fields(w, req);
  return std::move(w).take();
}

}  // namespace cbdc::wire
