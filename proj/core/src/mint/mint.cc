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

#include "cbdc/mint/mint.h"

#include <algorithm>
#include <set>

namespace cbdc::mint {

using crypto::BigInt;

namespace {

Bytes session_payload(const wire::RefreshCommitReq& req) {
  Bytes out = to_bytes("cbdc-refresh-session");
  append(out, wire::refresh_commit_payload(req));
  return out;
}

struct Loaded {
  wire::SpentRecord record;
  std::uint64_t version = 0;
};

Result<Loaded> load(const store::KvStore& shard, ByteView coin_pub,
                    const Hash256& denom_id) {
  Loaded out;
  auto cur = shard.get(coin_pub);
  if (!cur) {
    out.record.coin_pub.assign(coin_pub.begin(), coin_pub.end());
    out.record.denom_id = denom_id;
    return out;
  }
  CBDC_ASSIGN_OR_RETURN(out.record, wire::decode_spent_record(cur->value));
  out.version = cur->version;
  if (out.record.denom_id != denom_id) {
    return make_error(ErrorCode::kConflict,
                      "coin is recorded under another denomination");
  }
  return out;
}

}  // namespace

Mint::Mint(DenominationRegistry registry, store::ShardedStore spent,
           std::unique_ptr<store::KvStore> issuance, const Clock& clock,
           MintConfig config)
    : registry_(std::move(registry)),
      spent_(std::move(spent)),
      issuance_(std::move(issuance)),
      clock_(clock),
      config_(config),
      gamma_rng_(Drbg(config.gamma_seed).fork("gamma")) {
  CBDC_EXPECTS(issuance_ != nullptr, "issuance store required");
  CBDC_EXPECTS(config_.min_kappa >= 1 && config_.min_kappa <= config_.max_kappa &&
                   config_.max_kappa <= kMaxKappa,
               "kappa bounds out of range");
}

Status Mint::register_bank(const std::string& bank_id,
                           const BigInt& countersig_pub, Amount reserves) {
  if (bank_id.empty() || reserves.is_negative() ||
      !crypto::is_subgroup_element(registry_.group(), countersig_pub)) {
    return make_error(ErrorCode::kConfigError, "invalid bank account");
  }
  std::lock_guard lock(banks_mu_);
  if (!banks_.emplace(bank_id, Bank{countersig_pub, reserves}).second) {
    return make_error(ErrorCode::kConfigError, "bank already registered");
  }
  return ok_status();
}

Result<Amount> Mint::bank_balance(const std::string& bank_id) const {
  std::lock_guard lock(banks_mu_);
  auto it = banks_.find(bank_id);
  if (it == banks_.end()) return make_error(ErrorCode::kUnknownBank, bank_id);
  return it->second.balance;
}

Status Mint::credit_reserves(const std::string& bank_id, Amount amount) {
  CBDC_EXPECTS(!amount.is_negative(), "negative credit");
  return credit(bank_id, amount);
}

Status Mint::credit(const std::string& bank_id, Amount amount) {
  std::lock_guard lock(banks_mu_);
  auto it = banks_.find(bank_id);
  if (it == banks_.end()) return make_error(ErrorCode::kUnknownBank, bank_id);
  it->second.balance += amount;
  return ok_status();
}

void Mint::count(const Hash256& id, void (*fn)(Counters&, Amount), Amount v) {
  std::lock_guard lock(counters_mu_);
  fn(counters_[id], v);
}

Result<const DenominationKey*> Mint::lookup(const Hash256& id) const {
  auto key = registry_.find(id);
  if (!key.ok()) return make_error(ErrorCode::kUnknownDenomination);
  return *key;
}

Status Mint::check_coin(const DenominationKey& key, ByteView coin_pub,
                        ByteView denom_sig) const {
  const auto& group = registry_.group();
  if (coin_pub.size() != group.element_width() ||
      !crypto::is_subgroup_element(group, crypto::from_bytes(coin_pub))) {
    return make_error(ErrorCode::kBadCoinSignature, "invalid coin key");
  }
  const auto& pub = key.info.pub;
  if (denom_sig.size() != pub.width()) {
    return make_error(ErrorCode::kBadDenomSignature, "signature width");
  }
  BigInt s = crypto::from_bytes(denom_sig);
  if (s >= pub.n || !crypto::rsa_verify(pub, crypto::fdh(pub.n, coin_pub), s)) {
    return make_error(ErrorCode::kBadDenomSignature);
  }
  return ok_status();
}

Result<wire::WithdrawResp> Mint::withdraw(const wire::WithdrawReq& req) {
  BigInt bank_pub;
  {
    std::lock_guard lock(banks_mu_);
    auto it = banks_.find(req.bank_id);
    if (it == banks_.end()) {
      return make_error(ErrorCode::kUnknownBank, req.bank_id);
    }
    bank_pub = it->second.countersig_pub;
  }
  if (!crypto::coin_sig_verify(
          bank_pub, wire::withdraw_auth_payload(req.denom_id, req.f_blinded),
          req.countersig, registry_.group())) {
    return make_error(ErrorCode::kBadCountersignature);
  }
  CBDC_ASSIGN_OR_RETURN(const DenominationKey* key, lookup(req.denom_id));
  if (registry_.is_revoked(key->info.id)) {
    return make_error(ErrorCode::kDenominationRevoked);
  }
  Timestamp now = clock_.now();
  if (now < key->info.withdraw_start || now > key->info.withdraw_end) {
    return make_error(ErrorCode::kDenominationExpired, "withdraw window");
  }
  const auto& pub = key->info.pub;
  if (req.f_blinded.size() != pub.width()) {
    return make_error(ErrorCode::kInvalidRequest, "blinded value width");
  }
  BigInt f_blinded = crypto::from_bytes(req.f_blinded);
  if (f_blinded >= pub.n) {
    return make_error(ErrorCode::kInvalidRequest, "blinded value >= n");
  }

  Hash256 id = sha256(req.f_blinded);
  ByteView id_view(id);
  auto replay = [&](const store::Versioned& v) -> Result<wire::WithdrawResp> {
    CBDC_ASSIGN_OR_RETURN(wire::IssuanceRecord rec,
                          wire::decode_issuance_record(v.value));
    if (rec.origin != wire::IssuanceOrigin::kWithdrawal ||
        rec.denom_id != req.denom_id || rec.bank_id != req.bank_id) {
      return make_error(ErrorCode::kConflict, "blinded value already signed");
    }
    return wire::WithdrawResp{rec.s_blinded};
  };
  if (auto v = issuance_->get(id_view)) return replay(*v);

  Bytes s_blinded = crypto::to_fixed_bytes(
      crypto::blind_sign(key->priv, f_blinded), pub.width());

  std::lock_guard issue_lock(issue_mu_);
  if (auto v = issuance_->get(id_view)) return replay(*v);
  trace(tracer_, "W6", "debit " + req.bank_id + " " +
                           key->info.value.to_string() + " and blind-sign");
  {
    std::lock_guard lock(banks_mu_);
    Bank& bank = banks_.at(req.bank_id);
    if (bank.balance < key->info.value) {
      return make_error(ErrorCode::kInsufficientReserves);
    }
    bank.balance -= key->info.value;
  }
  wire::IssuanceRecord rec{wire::IssuanceOrigin::kWithdrawal, req.denom_id,
                           req.bank_id, now, s_blinded};
  bool stored =
      issuance_->compare_and_set(id_view, 0, wire::encode_issuance_record(rec));
  CBDC_EXPECTS(stored, "issuance log changed under its lock");
  count(req.denom_id,
        [](Counters& c, Amount v) {
          ++c.issued_count;
          c.issued += v;
        },
        key->info.value);
  trace(tracer_, "W7", "return blind signature");
  return wire::WithdrawResp{std::move(s_blinded)};
}

Result<wire::DepositResp> Mint::deposit(const wire::DepositReq& req) {
  CBDC_ASSIGN_OR_RETURN(const DenominationKey* key, lookup(req.denom_id));
  if (registry_.is_revoked(key->info.id)) {
    return make_error(ErrorCode::kDenominationRevoked);
  }
  Timestamp now = clock_.now();
  if (now > key->info.deposit_end) {
    return make_error(ErrorCode::kDenominationExpired, "deposit window");
  }
  if (!req.amount.is_positive() || req.amount > key->info.value) {
    return make_error(ErrorCode::kInvalidRequest, "deposit amount");
  }
  CBDC_RETURN_IF_ERROR(check_coin(*key, req.coin_pub, req.denom_sig));
  if (!crypto::coin_sig_verify(
          crypto::from_bytes(req.coin_pub),
          wire::deposit_payload(req.contract_hash, req.merchant_bank,
                                req.merchant_id, req.amount),
          req.coin_sig, registry_.group())) {
    return make_error(ErrorCode::kBadCoinSignature);
  }
  CBDC_RETURN_IF_ERROR(bank_balance(req.merchant_bank));
  trace(tracer_, "S4", "signatures valid, check spent list");

  store::KvStore& shard = spent_.shard_for(req.coin_pub);
  for (;;) {
    CBDC_ASSIGN_OR_RETURN(Loaded cur, load(shard, req.coin_pub, req.denom_id));
    wire::SpentRecord& rec = cur.record;
    for (const auto& e : rec.entries) {
      if (e.kind == wire::SpendKind::kDeposit &&
          e.reference == req.contract_hash && e.amount == req.amount &&
          e.bank_id == req.merchant_bank && e.merchant_id == req.merchant_id) {
        return wire::DepositResp{req.coin_pub, req.contract_hash, e.amount,
                                 e.spent_after, e.timestamp};
      }
    }
    if (rec.spent_total + req.amount > key->info.value) {
      return make_error(ErrorCode::kDoubleSpend);
    }
    rec.spent_total += req.amount;
    rec.entries.push_back({wire::SpendKind::kDeposit, req.contract_hash,
                           req.merchant_bank, req.merchant_id, req.amount, now,
                           rec.spent_total});
    if (!shard.compare_and_set(req.coin_pub, cur.version,
                               wire::encode_spent_record(rec))) {
      continue;
    }
    CBDC_RETURN_IF_ERROR(credit(req.merchant_bank, req.amount));
    count(req.denom_id, [](Counters& c, Amount v) { c.deposited += v; },
          req.amount);
    trace(tracer_, "S5", "add to spent list, credit " + req.merchant_bank +
                             " " + req.amount.to_string());
    trace(tracer_, "S6", "confirm deposit");
    return wire::DepositResp{req.coin_pub, req.contract_hash, req.amount,
                             rec.spent_total, now};
  }
}

std::uint8_t Mint::draw_gamma(int kappa) {
  std::lock_guard lock(gamma_mu_);
  return static_cast<std::uint8_t>(1 + gamma_rng_.uniform(kappa));
}

Result<wire::RefreshChallenge> Mint::refresh_commit(
    const wire::RefreshCommitReq& req) {
  CBDC_ASSIGN_OR_RETURN(const DenominationKey* key, lookup(req.denom_id));
  CBDC_ASSIGN_OR_RETURN(const DenominationKey* target,
                        lookup(req.target_denom_id));
  Timestamp now = clock_.now();
  if (registry_.is_revoked(key->info.id) ||
      registry_.is_revoked(target->info.id)) {
    return make_error(ErrorCode::kDenominationRevoked);
  }
  if (now > key->info.deposit_end) {
    return make_error(ErrorCode::kDenominationExpired, "deposit window");
  }
  if (now < target->info.withdraw_start || now > target->info.withdraw_end) {
    return make_error(ErrorCode::kDenominationExpired,
                      "target withdraw window");
  }
  int kappa = static_cast<int>(req.commitments.size());
  if (kappa < config_.min_kappa || kappa > config_.max_kappa) {
    return make_error(ErrorCode::kInvalidRequest, "commitment count");
  }
  const auto& group = registry_.group();
  for (const auto& c : req.commitments) {
    if (c.transfer_pub.size() != group.element_width() ||
        !crypto::is_subgroup_element(group,
                                     crypto::from_bytes(c.transfer_pub))) {
      return make_error(ErrorCode::kInvalidPoint, "transfer key");
    }
    if (c.blinded_change.size() != target->info.pub.width() ||
        crypto::from_bytes(c.blinded_change) >= target->info.pub.n) {
      return make_error(ErrorCode::kInvalidRequest, "blinded change");
    }
  }
  CBDC_RETURN_IF_ERROR(check_coin(*key, req.coin_pub, req.denom_sig));
  if (!crypto::coin_sig_verify(crypto::from_bytes(req.coin_pub),
                               wire::refresh_commit_payload(req), req.coin_sig,
                               group)) {
    return make_error(ErrorCode::kBadCoinSignature);
  }

  Hash256 session_id = sha256(session_payload(req));
  Amount need = target->info.value + target->info.refresh_fee;
  std::optional<std::uint8_t> gamma;
  store::KvStore& shard = spent_.shard_for(req.coin_pub);
  for (;;) {
    CBDC_ASSIGN_OR_RETURN(Loaded cur, load(shard, req.coin_pub, req.denom_id));
    wire::SpentRecord& rec = cur.record;
    if (const auto* s = rec.find_session(session_id)) {
      return wire::RefreshChallenge{session_id, s->gamma};
    }
    if (rec.spent_total + need > key->info.value) {
      return make_error(ErrorCode::kDoubleSpend);
    }
    Amount residual = key->info.value - rec.spent_total - need;
    if (req.residual_claim != residual) {
      return make_error(ErrorCode::kResidualMismatch);
    }
    if (!gamma) gamma = draw_gamma(kappa);
    rec.spent_total += need;
    rec.entries.push_back({wire::SpendKind::kRefresh, session_id, {}, {}, need,
                           now, rec.spent_total});
    wire::RefreshSessionRecord session;
    session.session_id = session_id;
    session.residual_claimed = req.residual_claim;
    session.target_denom_id = req.target_denom_id;
    session.target_value = target->info.value;
    session.fee = target->info.refresh_fee;
    session.commitments = req.commitments;
    session.gamma = *gamma;
    session.state = wire::SessionState::kCommitted;
    session.timestamp = now;
    rec.sessions.push_back(std::move(session));
    if (!shard.compare_and_set(req.coin_pub, cur.version,
                               wire::encode_spent_record(rec))) {
      continue;
    }
    count(req.denom_id, [](Counters& c, Amount v) { c.reserved += v; }, need);
    return wire::RefreshChallenge{session_id, *gamma};
  }
}

bool Mint::verify_reveals(const wire::RefreshSessionRecord& session,
                          const DenominationKey& target, const BigInt& c,
                          const std::vector<wire::Reveal>& reveals) const {
  const auto& group = registry_.group();
  const auto& pub = target.info.pub;
  for (const auto& r : reveals) {
    const wire::Commitment& com = session.commitments[r.index - 1];
    if (r.transfer_priv.size() != group.scalar_width()) return false;
    BigInt t = crypto::from_bytes(r.transfer_priv);
    if (t < 1 || t >= group.q) return false;
    if (crypto::encode_element(group, crypto::group_public(group, t)) !=
        com.transfer_pub) {
      return false;
    }
    auto secret = crypto::kx(t, c, group);
    if (!secret.ok()) return false;
    crypto::RefreshDerivation d = crypto::derive_refresh(*secret, pub, group);
    Bytes change_pub =
        crypto::encode_element(group, crypto::group_public(group, d.coin_priv));
    BigInt blinded = crypto::blind(crypto::fdh(pub.n, change_pub), d.blinding, pub);
    if (crypto::to_fixed_bytes(blinded, pub.width()) != com.blinded_change) {
      return false;
    }
  }
  return true;
}

Result<wire::RefreshRevealResp> Mint::refresh_reveal(
    const wire::RefreshRevealReq& req) {
  const auto& group = registry_.group();
  if (req.coin_pub.size() != group.element_width()) {
    return make_error(ErrorCode::kUnknownSession);
  }
  store::KvStore& shard = spent_.shard_for(req.coin_pub);
  auto first = shard.get(req.coin_pub);
  if (!first) return make_error(ErrorCode::kUnknownSession);
  CBDC_ASSIGN_OR_RETURN(wire::SpentRecord snapshot,
                        wire::decode_spent_record(first->value));
  const wire::RefreshSessionRecord* s0 = snapshot.find_session(req.session_id);
  if (!s0) return make_error(ErrorCode::kUnknownSession);
  if (s0->state == wire::SessionState::kCompleted) {
    return wire::RefreshRevealResp{req.session_id, s0->change_blind_sig};
  }
  if (s0->state == wire::SessionState::kForfeited) {
    return make_error(ErrorCode::kForfeited);
  }
  if (s0->state != wire::SessionState::kCommitted) {
    return make_error(ErrorCode::kWrongState);
  }
  int kappa = static_cast<int>(s0->commitments.size());
  std::set<int> seen;
  for (const auto& r : req.reveals) {
    if (r.index < 1 || r.index > kappa || r.index == s0->gamma ||
        !seen.insert(r.index).second) {
      return make_error(ErrorCode::kInvalidRequest, "reveal index");
    }
  }
  if (static_cast<int>(seen.size()) != kappa - 1) {
    return make_error(ErrorCode::kInvalidRequest, "reveal count");
  }
  CBDC_ASSIGN_OR_RETURN(const DenominationKey* target,
                        lookup(s0->target_denom_id));
  if (registry_.is_revoked(target->info.id)) {
    return make_error(ErrorCode::kDenominationRevoked);
  }

  bool honest =
      verify_reveals(*s0, *target, crypto::from_bytes(req.coin_pub), req.reveals);
  Bytes s_blinded;
  if (honest) {
    const auto& blinded = s0->commitments[s0->gamma - 1].blinded_change;
    s_blinded = crypto::to_fixed_bytes(
        crypto::blind_sign(target->priv, crypto::from_bytes(blinded)),
        target->info.pub.width());
  }
  Amount need = s0->target_value + s0->fee;
  Hash256 old_denom = snapshot.denom_id;
  CBDC_ASSIGN_OR_RETURN(const DenominationKey* old_key, lookup(old_denom));
  Amount old_value = old_key->info.value;

  for (;;) {
    auto cur = shard.get(req.coin_pub);
    CBDC_ASSIGN_OR_RETURN(wire::SpentRecord rec,
                          wire::decode_spent_record(cur->value));
    wire::RefreshSessionRecord* s = rec.find_session(req.session_id);
    if (s->state == wire::SessionState::kCompleted) {
      return wire::RefreshRevealResp{req.session_id, s->change_blind_sig};
    }
    if (s->state == wire::SessionState::kForfeited) {
      return make_error(ErrorCode::kForfeited);
    }
    s->state = honest ? wire::SessionState::kCompleted
                      : wire::SessionState::kForfeited;
    if (honest) s->change_blind_sig = s_blinded;
    wire::SessionState state = s->state;
    std::uint8_t gamma = s->gamma;
    Bytes blinded = s->commitments[gamma - 1].blinded_change;
    // A failed proof forfeits whatever the coin still had left as well.
    Amount leftover = old_value - rec.spent_total;
    if (!honest && leftover.is_positive()) {
      rec.spent_total += leftover;
      rec.entries.push_back({wire::SpendKind::kRefresh, req.session_id, {}, {},
                             leftover, clock_.now(), rec.spent_total});
    }
    if (!shard.compare_and_set(req.coin_pub, cur->version,
                               wire::encode_spent_record(rec))) {
      continue;
    }
    if (state == wire::SessionState::kForfeited) {
      count(old_denom, [](Counters& c, Amount v) { c.reserved -= v; }, need);
      count(old_denom, [](Counters& c, Amount v) { c.forfeited += v; },
            need + std::max(leftover, Amount::zero()));
      return make_error(ErrorCode::kForfeited);
    }
    count(old_denom,
          [](Counters& c, Amount v) {
            c.reserved -= v;
            c.melted += v;
          },
          need);
    count(target->info.id, [](Counters& c, Amount v) { c.change_issued += v; },
          target->info.value);
    // Change coins are refundable after revocation like withdrawn ones.
    Hash256 id = sha256(blinded);
    wire::IssuanceRecord issued{wire::IssuanceOrigin::kRefresh,
                                target->info.id, {}, clock_.now(), s_blinded};
    issuance_->compare_and_set(id, 0, wire::encode_issuance_record(issued));
    return wire::RefreshRevealResp{req.session_id, std::move(s_blinded)};
  }
}

wire::LinkResp Mint::link(ByteView coin_pub) const {
  wire::LinkResp resp;
  auto rec = spent_record(coin_pub);
  if (!rec) return resp;
  for (const auto& s : rec->sessions) {
    if (s.state != wire::SessionState::kCompleted) continue;
    resp.entries.push_back({s.commitments[s.gamma - 1].transfer_pub,
                            s.change_blind_sig, s.target_denom_id});
  }
  return resp;
}

Result<wire::RevocationNotice> Mint::revoke_denomination(
    const Hash256& denom_id) {
  if (!registry_.revoke(denom_id).ok()) {
    return make_error(ErrorCode::kUnknownDenomination);
  }
  return wire::RevocationNotice{denom_id};
}

Result<wire::RefundResp> Mint::refund_revoked(const wire::RefundReq& req) {
  CBDC_ASSIGN_OR_RETURN(const DenominationKey* key, lookup(req.denom_id));
  if (!registry_.is_revoked(key->info.id)) {
    return make_error(ErrorCode::kNotRevoked);
  }
  const auto& pub = key->info.pub;
  const auto& group = registry_.group();
  if (req.coin_pub.size() != group.element_width() ||
      req.denom_sig.size() != pub.width() || req.blinding.size() != pub.width()) {
    return make_error(ErrorCode::kBadSignature, "field width");
  }
  BigInt f = crypto::fdh(pub.n, req.coin_pub);
  BigInt s = crypto::from_bytes(req.denom_sig);
  if (s >= pub.n || !crypto::rsa_verify(pub, f, s)) {
    return make_error(ErrorCode::kBadSignature);
  }
  BigInt b = crypto::from_bytes(req.blinding);
  if (!crypto::is_valid_blinding(b, pub.n)) {
    return make_error(ErrorCode::kNoMatchingWithdrawal, "invalid blinding");
  }
  Bytes f_blinded = crypto::to_fixed_bytes(
      crypto::blind(f, crypto::BlindingFactor{b}, pub), pub.width());
  auto issued = issuance_record(f_blinded);
  if (!issued || issued->denom_id != req.denom_id) {
    return make_error(ErrorCode::kNoMatchingWithdrawal);
  }
  CBDC_RETURN_IF_ERROR(bank_balance(req.bank_id));

  Timestamp now = clock_.now();
  store::KvStore& shard = spent_.shard_for(req.coin_pub);
  for (;;) {
    CBDC_ASSIGN_OR_RETURN(Loaded cur, load(shard, req.coin_pub, req.denom_id));
    wire::SpentRecord& rec = cur.record;
    for (const auto& e : rec.entries) {
      if (e.kind == wire::SpendKind::kRefund) {
        return wire::RefundResp{req.coin_pub, e.amount};
      }
    }
    Amount residual = key->info.value - rec.spent_total;
    if (!residual.is_positive()) {
      return make_error(ErrorCode::kAlreadyRefunded);
    }
    rec.spent_total += residual;
    rec.entries.push_back({wire::SpendKind::kRefund, Hash256{}, req.bank_id, {},
                           residual, now, rec.spent_total});
    if (!shard.compare_and_set(req.coin_pub, cur.version,
                               wire::encode_spent_record(rec))) {
      continue;
    }
    CBDC_RETURN_IF_ERROR(credit(req.bank_id, residual));
    count(req.denom_id, [](Counters& c, Amount v) { c.refunded += v; },
          residual);
    return wire::RefundResp{req.coin_pub, residual};
  }
}

Result<wire::AuditResp> Mint::audit_denomination(const Hash256& denom_id) const {
  CBDC_RETURN_IF_ERROR(lookup(denom_id));
  Counters c;
  {
    std::lock_guard lock(counters_mu_);
    auto it = counters_.find(denom_id);
    if (it != counters_.end()) c = it->second;
  }
  wire::AuditResp r;
  r.denom_id = denom_id;
  r.issued_count = c.issued_count;
  r.issued_value = c.issued;
  r.change_issued_value = c.change_issued;
  r.deposited_value = c.deposited;
  r.refunded_value = c.refunded;
  r.forfeited_value = c.forfeited;
  r.melted_value = c.melted;
  r.reserved_value = c.reserved;
  r.violation = c.deposited + c.refunded + c.forfeited + c.melted + c.reserved >
                c.issued + c.change_issued;
  return r;
}

std::size_t Mint::gc(Timestamp now) {
  std::set<Hash256> expired;
  for (const auto& k : registry_.keys()) {
    if (k.info.legal_end < now) expired.insert(k.info.id);
  }
  if (expired.empty()) return 0;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < spent_.shard_count(); ++i) {
    store::KvStore& shard = spent_.shard(i);
    std::vector<std::pair<Bytes, std::uint64_t>> victims;
    shard.for_each([&](ByteView key, const store::Versioned& v) {
      auto rec = wire::decode_spent_record(v.value);
      if (rec.ok() && expired.count(rec->denom_id)) {
        victims.emplace_back(Bytes(key.begin(), key.end()), v.version);
      }
    });
    for (const auto& [key, version] : victims) {
      if (shard.erase(key, version)) ++dropped;
    }
  }
  return dropped;
}

std::optional<wire::SpentRecord> Mint::spent_record(ByteView coin_pub) const {
  auto cur = spent_.shard(spent_.map().shard_for(coin_pub)).get(coin_pub);
  if (!cur) return std::nullopt;
  auto rec = wire::decode_spent_record(cur->value);
  if (!rec.ok()) return std::nullopt;
  return std::move(rec).value();
}

std::optional<wire::IssuanceRecord> Mint::issuance_record(
    ByteView f_blinded) const {
  auto cur = issuance_->get(sha256(f_blinded));
  if (!cur) return std::nullopt;
  auto rec = wire::decode_issuance_record(cur->value);
  if (!rec.ok()) return std::nullopt;
  return std::move(rec).value();
}

const std::vector<std::string>& MintService::paths() {
  static const std::vector<std::string> kPaths = {
      "/keys", "/withdraw", "/deposit", "/refresh-commit",
      "/refresh-reveal", "/link", "/refund", "/audit"};
  return kPaths;
}

Bytes MintService::handle(const std::string& path, ByteView request) {
  auto msg = wire::decode(request);
  if (!msg.ok()) {
    return wire::encode(wire::Message(wire::ErrorMsg::from(msg.error())));
  }
  auto expect = [&](auto tag) -> const decltype(tag)* {
    return std::get_if<decltype(tag)>(&*msg);
  };
  auto wrong = [] {
    return wire::encode(wire::Message(wire::ErrorMsg::from(make_error(
        ErrorCode::kUnknownType, "message type does not match endpoint"))));
  };
  try {
    if (path == "/keys") {
      if (!expect(wire::KeysReq{})) return wrong();
      return wire::encode(wire::Message(mint_.keys()));
    }
    if (path == "/withdraw") {
      auto* r = expect(wire::WithdrawReq{});
      return r ? wire::encode_result(mint_.withdraw(*r)) : wrong();
    }
    if (path == "/deposit") {
      auto* r = expect(wire::DepositReq{});
      return r ? wire::encode_result(mint_.deposit(*r)) : wrong();
    }
    if (path == "/refresh-commit") {
      auto* r = expect(wire::RefreshCommitReq{});
      return r ? wire::encode_result(mint_.refresh_commit(*r)) : wrong();
    }
    if (path == "/refresh-reveal") {
      auto* r = expect(wire::RefreshRevealReq{});
      return r ? wire::encode_result(mint_.refresh_reveal(*r)) : wrong();
    }
    if (path == "/link") {
      auto* r = expect(wire::LinkReq{});
      return r ? wire::encode(wire::Message(mint_.link(r->coin_pub))) : wrong();
    }
    if (path == "/refund") {
      auto* r = expect(wire::RefundReq{});
      return r ? wire::encode_result(mint_.refund_revoked(*r)) : wrong();
    }
    if (path == "/audit") {
      auto* r = expect(wire::AuditReq{});
      return r ? wire::encode_result(mint_.audit_denomination(r->denom_id))
               : wrong();
    }
  } catch (const std::exception& e) {
    return wire::encode(wire::Message(wire::ErrorMsg::from(
        make_error(ErrorCode::kInvalidRequest, e.what()))));
  }
  return wire::encode(wire::Message(wire::ErrorMsg::from(
      make_error(ErrorCode::kNotFound, "no such endpoint: " + path))));
}

}  // namespace cbdc::mint
