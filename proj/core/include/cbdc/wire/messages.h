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

#ifndef CBDC_WIRE_MESSAGES_H_
#define CBDC_WIRE_MESSAGES_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/bytes.h"
#include "cbdc/clock.h"
#include "cbdc/status.h"
#include "cbdc/wire/codec.h"

namespace cbdc::wire {

inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kEnvelopeHeaderSize = 6;

// Message type tags. 1..15 are the core protocol; 16.. are the gateway,
// audit and payment extensions.
enum class MsgType : std::uint8_t {
  kKeys = 1,
  kWithdrawReq = 2,
  kWithdrawResp = 3,
  kDepositReq = 4,
  kDepositResp = 5,
  kRefreshCommitReq = 6,
  kRefreshChallenge = 7,
  kRefreshRevealReq = 8,
  kRefreshRevealResp = 9,
  kLinkReq = 10,
  kLinkResp = 11,
  kRevocationNotice = 12,
  kRefundReq = 13,
  kRefundResp = 14,
  kError = 15,
  kKeysReq = 16,
  kAuditReq = 17,
  kAuditResp = 18,
  kCustomerReq = 19,
  kPayment = 20,
  kSettlement = 21,
};

// Big integers travel as fixed-width big-endian byte strings (width of the
// modulus or group they belong to). Messages keep them as bytes so that
// decode(encode(m)) and encode(decode(b)) are both exact; width checks
// happen where the relevant key is known.

struct DenomInfo {
  Hash256 denom_id{};
  Amount value;
  Bytes e;
  Bytes n;
  Timestamp withdraw_start = 0;
  Timestamp withdraw_end = 0;
  Timestamp deposit_end = 0;
  Timestamp legal_end = 0;
  Amount refresh_fee;
  bool revoked = false;

  void encode(Writer& w) const;
  static DenomInfo decode(Reader& r);
  friend bool operator==(const DenomInfo&, const DenomInfo&) = default;
};

struct Keys {
  static constexpr MsgType kType = MsgType::kKeys;
  Bytes group_p;
  Bytes group_q;
  Bytes group_g;
  std::vector<DenomInfo> denominations;

  void encode_body(Writer& w) const;
  static Keys decode_body(Reader& r);
  friend bool operator==(const Keys&, const Keys&) = default;
};

struct KeysReq {
  static constexpr MsgType kType = MsgType::kKeysReq;
  void encode_body(Writer&) const {}
  static KeysReq decode_body(Reader&) { return {}; }
  friend bool operator==(const KeysReq&, const KeysReq&) = default;
};

struct WithdrawReq {
  static constexpr MsgType kType = MsgType::kWithdrawReq;
  std::string bank_id;
  Hash256 denom_id{};
  Bytes f_blinded;
  // Gateway Schnorr signature over withdraw_auth_payload().
  Bytes countersig;

  void encode_body(Writer& w) const;
  static WithdrawReq decode_body(Reader& r);
  friend bool operator==(const WithdrawReq&, const WithdrawReq&) = default;
};

struct WithdrawResp {
  static constexpr MsgType kType = MsgType::kWithdrawResp;
  Bytes s_blinded;

  void encode_body(Writer& w) const;
  static WithdrawResp decode_body(Reader& r);
  friend bool operator==(const WithdrawResp&, const WithdrawResp&) = default;
};

// Also the payment part a wallet hands to a merchant.
struct DepositReq {
  static constexpr MsgType kType = MsgType::kDepositReq;
  Bytes coin_pub;
  Hash256 denom_id{};
  Bytes denom_sig;
  Amount amount;
  Hash256 contract_hash{};
  std::string merchant_bank;
  std::string merchant_id;
  // Coin signature over deposit_payload().
  Bytes coin_sig;

  void encode_body(Writer& w) const;
  static DepositReq decode_body(Reader& r);
  friend bool operator==(const DepositReq&, const DepositReq&) = default;
};

struct DepositResp {
  static constexpr MsgType kType = MsgType::kDepositResp;
  Bytes coin_pub;
  Hash256 contract_hash{};
  Amount amount;
  Amount spent_total;
  Timestamp timestamp = 0;

  void encode_body(Writer& w) const;
  static DepositResp decode_body(Reader& r);
  friend bool operator==(const DepositResp&, const DepositResp&) = default;
};

struct Commitment {
  Bytes transfer_pub;
  Bytes blinded_change;

  void encode(Writer& w) const;
  static Commitment decode(Reader& r);
  friend bool operator==(const Commitment&, const Commitment&) = default;
};

struct RefreshCommitReq {
  static constexpr MsgType kType = MsgType::kRefreshCommitReq;
  Bytes coin_pub;
  Hash256 denom_id{};
  Bytes denom_sig;
  // Residual the wallet expects to remain on the old coin after this
  // refresh.
  Amount residual_claim;
  Hash256 target_denom_id{};
  std::vector<Commitment> commitments;
  // Old-coin signature over refresh_commit_payload().
  Bytes coin_sig;

  void encode_body(Writer& w) const;
  static RefreshCommitReq decode_body(Reader& r);
  friend bool operator==(const RefreshCommitReq&,
                         const RefreshCommitReq&) = default;
};

struct RefreshChallenge {
  static constexpr MsgType kType = MsgType::kRefreshChallenge;
  Hash256 session_id{};
  // 1-based index in [1, kappa].
  std::uint8_t gamma = 0;

  void encode_body(Writer& w) const;
  static RefreshChallenge decode_body(Reader& r);
  friend bool operator==(const RefreshChallenge&,
                         const RefreshChallenge&) = default;
};

struct Reveal {
  std::uint8_t index = 0;  // 1-based
  Bytes transfer_priv;

  void encode(Writer& w) const;
  static Reveal decode(Reader& r);
  friend bool operator==(const Reveal&, const Reveal&) = default;
};

struct RefreshRevealReq {
  static constexpr MsgType kType = MsgType::kRefreshRevealReq;
  Bytes coin_pub;
  Hash256 session_id{};
  std::vector<Reveal> reveals;

  void encode_body(Writer& w) const;
  static RefreshRevealReq decode_body(Reader& r);
  friend bool operator==(const RefreshRevealReq&,
                         const RefreshRevealReq&) = default;
};

struct RefreshRevealResp {
  static constexpr MsgType kType = MsgType::kRefreshRevealResp;
  Hash256 session_id{};
  Bytes s_blinded;

  void encode_body(Writer& w) const;
  static RefreshRevealResp decode_body(Reader& r);
  friend bool operator==(const RefreshRevealResp&,
                         const RefreshRevealResp&) = default;
};

struct LinkReq {
  static constexpr MsgType kType = MsgType::kLinkReq;
  Bytes coin_pub;

  void encode_body(Writer& w) const;
  static LinkReq decode_body(Reader& r);
  friend bool operator==(const LinkReq&, const LinkReq&) = default;
};

struct LinkEntry {
  Bytes transfer_pub;
  Bytes s_blinded;
  Hash256 target_denom_id{};

  void encode(Writer& w) const;
  static LinkEntry decode(Reader& r);
  friend bool operator==(const LinkEntry&, const LinkEntry&) = default;
};

struct LinkResp {
  static constexpr MsgType kType = MsgType::kLinkResp;
  std::vector<LinkEntry> entries;

  void encode_body(Writer& w) const;
  static LinkResp decode_body(Reader& r);
  friend bool operator==(const LinkResp&, const LinkResp&) = default;
};

struct RevocationNotice {
  static constexpr MsgType kType = MsgType::kRevocationNotice;
  Hash256 denom_id{};

  void encode_body(Writer& w) const;
  static RevocationNotice decode_body(Reader& r);
  friend bool operator==(const RevocationNotice&,
                         const RevocationNotice&) = default;
};

struct RefundReq {
  static constexpr MsgType kType = MsgType::kRefundReq;
  Bytes coin_pub;
  Hash256 denom_id{};
  Bytes denom_sig;
  Bytes blinding;
  std::string bank_id;

  void encode_body(Writer& w) const;
  static RefundReq decode_body(Reader& r);
  friend bool operator==(const RefundReq&, const RefundReq&) = default;
};

struct RefundResp {
  static constexpr MsgType kType = MsgType::kRefundResp;
  Bytes coin_pub;
  Amount refunded;

  void encode_body(Writer& w) const;
  static RefundResp decode_body(Reader& r);
  friend bool operator==(const RefundResp&, const RefundResp&) = default;
};

struct ErrorMsg {
  static constexpr MsgType kType = MsgType::kError;
  std::uint16_t code = 0;
  std::uint16_t inner = 0;
  std::string message;

  static ErrorMsg from(const Error& e);
  Error to_error() const;

  void encode_body(Writer& w) const;
  static ErrorMsg decode_body(Reader& r);
  friend bool operator==(const ErrorMsg&, const ErrorMsg&) = default;
};

struct AuditReq {
  static constexpr MsgType kType = MsgType::kAuditReq;
  Hash256 denom_id{};

  void encode_body(Writer& w) const;
  static AuditReq decode_body(Reader& r);
  friend bool operator==(const AuditReq&, const AuditReq&) = default;
};

struct AuditResp {
  static constexpr MsgType kType = MsgType::kAuditResp;
  Hash256 denom_id{};
  std::uint64_t issued_count = 0;
  Amount issued_value;
  Amount change_issued_value;
  Amount deposited_value;
  Amount refunded_value;
  Amount forfeited_value;
  Amount melted_value;
  Amount reserved_value;
  bool violation = false;

  void encode_body(Writer& w) const;
  static AuditResp decode_body(Reader& r);
  friend bool operator==(const AuditResp&, const AuditResp&) = default;
};

// Customer-authenticated request to a gateway; `inner` is an encoded
// WithdrawReq or RefundReq envelope.
struct CustomerReq {
  static constexpr MsgType kType = MsgType::kCustomerReq;
  std::string customer_id;
  std::string credential;
  Bytes inner;

  void encode_body(Writer& w) const;
  static CustomerReq decode_body(Reader& r);
  friend bool operator==(const CustomerReq&, const CustomerReq&) = default;
};

struct ContractTerms {
  std::string bank_id;
  std::string merchant_id;
  Amount amount;
  Bytes description;
  Hash256 nonce{};

  void encode(Writer& w) const;
  static ContractTerms decode(Reader& r);
  // SHA-256 of the canonical encoding.
  Hash256 hash() const;
  friend bool operator==(const ContractTerms&, const ContractTerms&) = default;
};

struct Payment {
  static constexpr MsgType kType = MsgType::kPayment;
  ContractTerms contract;
  std::vector<DepositReq> parts;

  void encode_body(Writer& w) const;
  static Payment decode_body(Reader& r);
  friend bool operator==(const Payment&, const Payment&) = default;
};

struct PartStatus {
  Bytes coin_pub;
  std::uint16_t code = 0;
  std::uint16_t inner = 0;

  void encode(Writer& w) const;
  static PartStatus decode(Reader& r);
  friend bool operator==(const PartStatus&, const PartStatus&) = default;
};

struct Settlement {
  static constexpr MsgType kType = MsgType::kSettlement;
  Hash256 contract_hash{};
  bool delivered = false;
  std::vector<PartStatus> parts;

  void encode_body(Writer& w) const;
  static Settlement decode_body(Reader& r);
  friend bool operator==(const Settlement&, const Settlement&) = default;
};

using Message =
    std::variant<Keys, WithdrawReq, WithdrawResp, DepositReq, DepositResp,
                 RefreshCommitReq, RefreshChallenge, RefreshRevealReq,
                 RefreshRevealResp, LinkReq, LinkResp, RevocationNotice,
                 RefundReq, RefundResp, ErrorMsg, KeysReq, AuditReq, AuditResp,
                 CustomerReq, Payment, Settlement>;

MsgType message_type(const Message& m);
std::string_view msg_type_name(MsgType t);

// Envelope: version(1) | type(1) | body_len(4, big-endian) | body.
Bytes encode(const Message& m);
Result<Message> decode(ByteView bytes);

// Decodes and checks the concrete type. An ErrorMsg payload is returned as
// its Error.
template <typename T>
Result<T> decode_as(ByteView bytes) {
  auto m = decode(bytes);
  if (!m.ok()) return m.error();
  if (auto* err = std::get_if<ErrorMsg>(&*m)) return err->to_error();
  if (auto* v = std::get_if<T>(&*m)) return std::move(*v);
  return make_error(ErrorCode::kMalformedMessage, "unexpected message type");
}

// Encodes a result as its value or as an ErrorMsg.
template <typename T>
Bytes encode_result(const Result<T>& r) {
  if (r.ok()) return encode(Message(*r));
  return encode(Message(ErrorMsg::from(r.error())));
}

// Byte strings that signatures cover.
Bytes withdraw_auth_payload(const Hash256& denom_id, ByteView f_blinded);
Bytes deposit_payload(const Hash256& contract_hash,
                      const std::string& merchant_bank,
                      const std::string& merchant_id, Amount amount);
Bytes refresh_commit_payload(const RefreshCommitReq& req);

}  // namespace cbdc::wire

#endif  // CBDC_WIRE_MESSAGES_H_
