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

#include "cbdc/wallet/wallet.h"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace cbdc::wallet {

using crypto::BigInt;

Wallet::Wallet(WalletConfig config, net::MintClient mint,
               net::GatewayClient gateway, const Clock& clock, Drbg rng)
    : config_(std::move(config)),
      mint_(std::move(mint)),
      gateway_(std::move(gateway)),
      clock_(clock),
      rng_(std::move(rng)) {}

template <typename F>
auto Wallet::with_retry(F&& fn) -> decltype(fn()) {
  auto r = fn();
  for (int i = 1; i < config_.max_attempts &&
                  r.code() == ErrorCode::kUnavailable;
       ++i) {
    r = fn();
  }
  return r;
}

Status Wallet::sync_keys() {
  auto keys = with_retry([&] { return mint_.keys(); });
  if (!keys.ok()) return keys.error();
  CBDC_ASSIGN_OR_RETURN(mint::RegistryView view,
                        mint::RegistryView::from_keys(*keys));
  registry_ = std::move(view);
  return ok_status();
}

const mint::RegistryView& Wallet::registry() const {
  CBDC_EXPECTS(registry_.has_value(), "registry not synced");
  return *registry_;
}

const mint::DenominationInfo* Wallet::denom(const Hash256& id) const {
  return registry_ ? registry_->find(id) : nullptr;
}

Result<std::vector<const mint::DenominationInfo*>> Wallet::plan_withdrawal(
    Amount amount, const mint::RegistryView& registry, Timestamp now) {
  CBDC_EXPECTS(amount.is_positive(), "withdrawal amount must be positive");
  std::vector<const mint::DenominationInfo*> plan;
  Amount left = amount;
  for (const auto* d : registry.withdrawable(now)) {
    while (d->value <= left) {
      plan.push_back(d);
      left -= d->value;
    }
  }
  if (!left.is_zero()) {
    return make_error(ErrorCode::kExactCoverImpossible,
                      "cannot represent " + amount.to_string());
  }
  return plan;
}

Result<std::vector<Coin>> Wallet::withdraw(Amount amount) {
  if (!registry_) CBDC_RETURN_IF_ERROR(sync_keys());
  CBDC_ASSIGN_OR_RETURN(auto plan,
                        plan_withdrawal(amount, *registry_, clock_.now()));
  std::vector<Coin> out;
  for (const auto* d : plan) {
    CBDC_ASSIGN_OR_RETURN(Coin c, withdraw_denomination(*d));
    out.push_back(std::move(c));
  }
  return out;
}

Result<Coin> Wallet::withdraw_denomination(const mint::DenominationInfo& d) {
  const auto& group = registry().group();
  trace(tracer_, "W1", "authenticate as " + config_.customer_id);
  PendingWithdrawal p;
  crypto::GroupKeyPair kp = crypto::group_keygen(group, rng_);
  Coin& coin = p.coin;
  coin.priv = kp.priv;
  coin.pub = crypto::encode_element(group, kp.pub);
  coin.denom_id = d.id;
  coin.face_value = d.value;
  coin.local_residual = d.value;
  crypto::BlindingFactor b = crypto::sample_blinding(d.pub.n, rng_);
  coin.blinding = crypto::to_fixed_bytes(b.b, d.pub.width());
  BigInt f_blinded = crypto::blind(crypto::fdh(d.pub.n, coin.pub), b, d.pub);
  p.f_blinded = crypto::to_fixed_bytes(f_blinded, d.pub.width());
  coin.origin = {wire::CoinOriginKind::kWithdrawn, sha256(p.f_blinded), {}, 0};
  trace(tracer_, "W2", "coin key pair, blinding, f' for " + d.value.to_string());
  auto r = complete_withdrawal(p);
  if (!r.ok() && r.code() == ErrorCode::kUnavailable) {
    p.last_error = r.error();
    pending_.push_back(std::move(p));
  }
  return r;
}

Result<Coin> Wallet::complete_withdrawal(PendingWithdrawal& p) {
  const mint::DenominationInfo* d = denom(p.coin.denom_id);
  if (!d) return make_error(ErrorCode::kUnknownDenomination);
  wire::WithdrawReq req{{}, d->id, p.f_blinded, {}};
  trace(tracer_, "W3", "send f' with withdrawal authorization");
  auto resp = with_retry([&] {
    return gateway_.withdraw(config_.customer_id, config_.credential, req);
  });
  if (!resp.ok()) return resp.error();
  crypto::BlindingFactor b{crypto::from_bytes(p.coin.blinding)};
  BigInt s = crypto::unblind(crypto::from_bytes(resp->s_blinded), b, d->pub.n);
  p.coin.denom_sig = crypto::to_fixed_bytes(s, d->pub.width());
  if (resp->s_blinded.size() != d->pub.width() || !verify_coin(p.coin, *d)) {
    PendingWithdrawal dispute = p;
    dispute.coin.priv = 0;
    dispute.coin.local_residual = Amount::zero();
    dispute.last_error = make_error(ErrorCode::kBadMintSignature);
    disputes_.push_back(std::move(dispute));
    return make_error(ErrorCode::kBadMintSignature);
  }
  add_coin(p.coin);
  trace(tracer_, "W9", "unblind and store coin");
  return p.coin;
}

std::size_t Wallet::retry_pending() {
  std::size_t done = 0;
  std::vector<PendingWithdrawal> still;
  for (auto& p : pending_) {
    auto r = complete_withdrawal(p);
    if (r.ok()) {
      ++done;
    } else if (r.code() == ErrorCode::kUnavailable) {
      p.last_error = r.error();
      still.push_back(std::move(p));
    }
  }
  pending_ = std::move(still);
  std::vector<PendingRefresh> refreshes;
  for (auto& p : refreshes_) {
    auto r = complete_refresh(p);
    if (r.ok()) {
      ++done;
    } else if (r.code() == ErrorCode::kUnavailable) {
      refreshes.push_back(std::move(p));
    } else {
      trace(tracer_, "refresh-abandoned", r.error().to_string());
    }
  }
  refreshes_ = std::move(refreshes);
  return done;
}

Result<PaymentPlan> Wallet::plan_payment(
    const wire::ContractTerms& contract) const {
  CBDC_EXPECTS(contract.amount.is_positive(), "contract amount must be > 0");
  Timestamp now = clock_.now();
  std::vector<const Coin*> usable;
  for (const auto& c : coins_) {
    const auto* d = denom(c.denom_id);
    if (c.local_residual.is_positive() && d && d->can_deposit(now)) {
      usable.push_back(&c);
    }
  }
  std::sort(usable.begin(), usable.end(), [](const Coin* a, const Coin* b) {
    if (a->local_residual != b->local_residual) {
      return a->local_residual > b->local_residual;
    }
    return a->pub < b->pub;
  });
  PaymentPlan plan;
  plan.contract_hash = contract.hash();
  Amount left = contract.amount;
  for (const Coin* c : usable) {
    if (left.is_zero()) break;
    Amount take = std::min(left, c->local_residual);
    plan.parts.push_back({c->pub, take});
    left -= take;
  }
  if (!left.is_zero()) {
    return make_error(ErrorCode::kInsufficientResidual,
                      "wallet holds less than " + contract.amount.to_string());
  }
  plan.total = contract.amount;
  return plan;
}

Result<std::vector<wire::DepositReq>> Wallet::pay(
    const wire::ContractTerms& contract, const PaymentPlan& plan) {
  const auto& group = registry().group();
  Hash256 h = contract.hash();
  if (plan.contract_hash != h) {
    return make_error(ErrorCode::kAmountMismatch, "plan is for another contract");
  }
  Amount sum;
  for (const auto& part : plan.parts) {
    const Coin* c = find(part.coin_pub);
    if (!c || !part.amount.is_positive() || part.amount > c->local_residual) {
      return make_error(ErrorCode::kInsufficientResidual);
    }
    sum += part.amount;
  }
  if (sum != contract.amount || plan.total != contract.amount) {
    return make_error(ErrorCode::kAmountMismatch);
  }
  std::vector<wire::DepositReq> out;
  for (const auto& part : plan.parts) {
    Coin* c = find(part.coin_pub);
    wire::DepositReq r;
    r.coin_pub = c->pub;
    r.denom_id = c->denom_id;
    r.denom_sig = c->denom_sig;
    r.amount = part.amount;
    r.contract_hash = h;
    r.merchant_bank = contract.bank_id;
    r.merchant_id = contract.merchant_id;
    r.coin_sig = crypto::coin_sign(c->priv,
                                   wire::deposit_payload(h, r.merchant_bank,
                                                         r.merchant_id, r.amount),
                                   group, rng_)
                     .encode(group);
    c->local_residual -= part.amount;
    trace(tracer_, "S1", "sign contract with coin for " +
                             part.amount.to_string());
    out.push_back(std::move(r));
  }
  return out;
}

Result<wire::Payment> Wallet::pay(const wire::ContractTerms& contract) {
  CBDC_ASSIGN_OR_RETURN(PaymentPlan plan, plan_payment(contract));
  CBDC_ASSIGN_OR_RETURN(auto parts, pay(contract, plan));
  return wire::Payment{contract, std::move(parts)};
}

Result<Coin> Wallet::refresh(ByteView coin_pub, const Hash256& target_id) {
  Coin* coin = find(coin_pub);
  if (!coin) return make_error(ErrorCode::kNotFound, "no such coin");
  const auto* target = denom(target_id);
  if (!target) return make_error(ErrorCode::kUnknownDenomination);
  Amount need = target->value + target->refresh_fee;
  if (coin->local_residual < need) {
    return make_error(ErrorCode::kInsufficientResidual);
  }
  PendingRefresh p{build_refresh(*coin, coin->local_residual - need, *target,
                                 config_.kappa, registry().group(), rng_),
                   std::nullopt, need};
  auto r = complete_refresh(p);
  if (r.code() == ErrorCode::kUnavailable) refreshes_.push_back(std::move(p));
  return r;
}

Result<Coin> Wallet::complete_refresh(PendingRefresh& p) {
  const auto* target = denom(p.build.request.target_denom_id);
  if (!target) return make_error(ErrorCode::kUnknownDenomination);
  if (!p.challenge) {
    auto ch = with_retry([&] { return mint_.refresh_commit(p.build.request); });
    if (!ch.ok()) return ch.error();
    p.challenge = *ch;
    if (Coin* c = find(p.build.request.coin_pub)) c->local_residual -= p.need;
  }
  auto reveal = build_reveal(p.build, *p.challenge, registry().group());
  auto resp = with_retry([&] { return mint_.refresh_reveal(reveal); });
  if (!resp.ok()) {
    if (resp.code() == ErrorCode::kForfeited) {
      if (Coin* c = find(p.build.request.coin_pub)) {
        c->local_residual = Amount::zero();
      }
    }
    return resp.error();
  }
  CBDC_ASSIGN_OR_RETURN(Coin change,
                        finish_refresh(p.build, *p.challenge, *resp, *target));
  add_coin(change);
  return change;
}

Result<std::vector<const mint::DenominationInfo*>> Wallet::plan_change(
    Amount residual) const {
  std::vector<const mint::DenominationInfo*> plan;
  Amount left = residual;
  for (const auto* d : registry().withdrawable(clock_.now())) {
    while (d->value + d->refresh_fee <= left) {
      plan.push_back(d);
      left -= d->value + d->refresh_fee;
    }
  }
  if (!left.is_zero()) {
    return make_error(ErrorCode::kExactCoverImpossible,
                      left.to_string() + " left uncovered");
  }
  return plan;
}

Result<std::vector<Coin>> Wallet::refresh_residual(ByteView coin_pub) {
  const Coin* coin = find(coin_pub);
  if (!coin) return make_error(ErrorCode::kNotFound, "no such coin");
  CBDC_ASSIGN_OR_RETURN(auto plan, plan_change(coin->local_residual));
  Bytes pub(coin_pub.begin(), coin_pub.end());
  std::vector<Coin> out;
  for (const auto* d : plan) {
    CBDC_ASSIGN_OR_RETURN(Coin c, refresh(pub, d->id));
    out.push_back(std::move(c));
  }
  return out;
}

Result<std::vector<Coin>> Wallet::derive_linked_change(const Coin& original) {
  auto link = with_retry([&] { return mint_.link(original.pub); });
  if (!link.ok()) return link.error();
  std::vector<Coin> out;
  for (const auto& e : link->entries) {
    const auto* target = denom(e.target_denom_id);
    if (!target) continue;
    auto c = derive_change(original, e, *target, registry().group());
    if (!c.ok()) continue;
    if (const Coin* held = find(c->pub)) {
      out.push_back(*held);
    } else {
      add_coin(*c);
      out.push_back(std::move(*c));
    }
  }
  return out;
}

RecoveryReport Wallet::recover_revoked(const wire::RevocationNotice& notice) {
  RecoveryReport report;
  for (auto& c : coins_) {
    if (c.denom_id != notice.denom_id) continue;
    wire::RefundReq req{c.pub, c.denom_id, c.denom_sig, c.blinding, {}};
    auto r = with_retry([&] {
      return gateway_.refund(config_.customer_id, config_.credential, req);
    });
    if (r.ok()) {
      report.refunded += r->refunded;
      c.local_residual = Amount::zero();
      report.coins.push_back({c.pub, r->refunded});
    } else {
      if (r.error().root() == ErrorCode::kAlreadyRefunded) {
        c.local_residual = Amount::zero();
      }
      report.coins.push_back({c.pub, r.error()});
    }
  }
  return report;
}

Result<std::vector<Coin>> Wallet::sweep(Timestamp now) {
  std::vector<Bytes> due;
  for (const auto& c : coins_) {
    const auto* d = denom(c.denom_id);
    if (d && !d->revoked && c.local_residual.is_positive() &&
        now <= d->deposit_end && d->deposit_end - now <= config_.sweep_window) {
      due.push_back(c.pub);
    }
  }
  std::vector<Coin> out;
  for (const auto& pub : due) {
    auto fresh = refresh_residual(pub);
    if (!fresh.ok()) continue;
    for (auto& c : *fresh) out.push_back(std::move(c));
  }
  return out;
}

const Coin* Wallet::find(ByteView coin_pub) const {
  for (const auto& c : coins_) {
    if (std::equal(c.pub.begin(), c.pub.end(), coin_pub.begin(),
                   coin_pub.end())) {
      return &c;
    }
  }
  return nullptr;
}

Coin* Wallet::find(ByteView coin_pub) {
  return const_cast<Coin*>(std::as_const(*this).find(coin_pub));
}

bool Wallet::add_coin(Coin coin) {
  if (find(coin.pub)) return false;
  coins_.push_back(std::move(coin));
  return true;
}

Amount Wallet::balance() const {
  Amount sum;
  for (const auto& c : coins_) sum += c.local_residual;
  return sum;
}

Bytes Wallet::serialize() const {
  std::vector<wire::CoinFileRecord> records;
  for (const auto& c : coins_) records.push_back(c.to_record(registry().group()));
  return wire::encode_wallet_file(records);
}

Status Wallet::restore(ByteView file) {
  CBDC_ASSIGN_OR_RETURN(auto records, wire::decode_wallet_file(file));
  coins_.clear();
  for (const auto& r : records) coins_.push_back(Coin::from_record(r));
  return ok_status();
}

Status Wallet::save(const std::string& path) const {
  Bytes data = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) return make_error(ErrorCode::kIoError, "cannot write " + path);
  return ok_status();
}

Status Wallet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return make_error(ErrorCode::kIoError, "cannot read " + path);
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  return restore(data);
}

}  // namespace cbdc::wallet
