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

#include "cbdc/bank/gateway.h"

#include "json.hpp"

namespace cbdc::bank {

namespace {

Error rejected(const Error& e) {
  if (e.code == ErrorCode::kUnavailable) return e;
  return Error{ErrorCode::kMintRejected, e.message, e.root()};
}

Result<Amount> parse_amount(const nlohmann::json& j, const char* field,
                            Amount fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_string()) {
    return make_error(ErrorCode::kConfigError,
                      std::string(field) + " must be a decimal string");
  }
  auto a = Amount::parse(j[field].get<std::string>());
  if (!a || a->is_negative()) {
    return make_error(ErrorCode::kConfigError,
                      std::string("bad amount in ") + field);
  }
  return *a;
}

Hash256 deposit_key(const wire::DepositReq& req) {
  wire::Writer w;
  w.var_bytes(req.coin_pub);
  w.hash(req.contract_hash);
  w.amount(req.amount);
  w.str(req.merchant_id);
  return sha256(w.bytes());
}

}  // namespace

Result<GatewayConfig> GatewayConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return make_error(ErrorCode::kConfigError, "gateway config is not JSON");
  }
  GatewayConfig c;
  try {
    c.bank_id = j.at("bank_id").get<std::string>();
    if (j.contains("signing_key")) {
      auto raw = from_hex(j["signing_key"].get<std::string>());
      if (!raw) return make_error(ErrorCode::kConfigError, "signing_key hex");
      c.signing_key = crypto::from_bytes(*raw);
    }
    for (const auto& cj : j.value("customers", nlohmann::json::array())) {
      CustomerConfig cc;
      cc.id = cj.at("id").get<std::string>();
      cc.secret = cj.at("secret").get<std::string>();
      CBDC_ASSIGN_OR_RETURN(cc.balance,
                            parse_amount(cj, "balance", Amount::zero()));
      CBDC_ASSIGN_OR_RETURN(cc.daily_limit,
                            parse_amount(cj, "daily_limit", kUnlimited));
      c.customers.push_back(std::move(cc));
    }
    for (const auto& mj : j.value("merchants", nlohmann::json::array())) {
      MerchantConfig mc;
      mc.id = mj.at("id").get<std::string>();
      CBDC_ASSIGN_OR_RETURN(mc.inbound_limit,
                            parse_amount(mj, "inbound_limit", kUnlimited));
      c.merchants.push_back(std::move(mc));
    }
  } catch (const nlohmann::json::exception& e) {
    return make_error(ErrorCode::kConfigError, e.what());
  }
  if (c.bank_id.empty()) {
    return make_error(ErrorCode::kConfigError, "bank_id is empty");
  }
  return c;
}

Gateway::Gateway(GatewayConfig config, const crypto::GroupParams& group,
                 net::MintClient mint, Drbg rng)
    : bank_id_(std::move(config.bank_id)),
      group_(group),
      mint_(std::move(mint)),
      rng_(std::move(rng)) {
  if (config.signing_key) {
    CBDC_EXPECTS(*config.signing_key > 0 && *config.signing_key < group_.q,
                 "signing key out of range");
    key_ = {*config.signing_key, crypto::group_public(group_, *config.signing_key)};
  } else {
    key_ = crypto::group_keygen(group_, rng_);
  }
  for (auto& c : config.customers) {
    customers_[c.id] = CustomerAccount{c.id, c.secret, c.balance,
                                       Amount::zero(), c.daily_limit};
  }
  for (auto& m : config.merchants) {
    merchants_[m.id] =
        MerchantAccount{m.id, Amount::zero(), Amount::zero(), m.inbound_limit};
  }
}

Status Gateway::authenticate(const std::string& id,
                             const std::string& credential) {
  std::lock_guard lock(mu_);
  auto it = customers_.find(id);
  if (it == customers_.end() || it->second.secret != credential) {
    return make_error(ErrorCode::kAuthFailed);
  }
  return ok_status();
}

Result<Amount> Gateway::denomination_value(const Hash256& denom_id) {
  {
    std::lock_guard lock(mu_);
    if (registry_) {
      if (const auto* d = registry_->find(denom_id)) return d->value;
    }
  }
  auto keys = mint_.keys();
  if (!keys.ok()) return rejected(keys.error());
  CBDC_ASSIGN_OR_RETURN(mint::RegistryView view,
                        mint::RegistryView::from_keys(*keys));
  std::lock_guard lock(mu_);
  registry_ = std::move(view);
  if (const auto* d = registry_->find(denom_id)) return d->value;
  return Error{ErrorCode::kMintRejected, "unknown denomination",
               ErrorCode::kUnknownDenomination};
}

Result<wire::WithdrawResp> Gateway::withdraw_for_customer(
    const std::string& customer_id, const std::string& credential,
    const wire::WithdrawReq& in) {
  CBDC_RETURN_IF_ERROR(authenticate(customer_id, credential));
  CBDC_ASSIGN_OR_RETURN(Amount value, denomination_value(in.denom_id));
  Hash256 key = sha256(in.f_blinded);
  wire::WithdrawReq req{bank_id_, in.denom_id, in.f_blinded, {}};
  {
    std::lock_guard lock(mu_);
    if (auto it = withdrawals_.find(key); it != withdrawals_.end()) {
      if (it->second.customer_id != customer_id ||
          it->second.denom_id != in.denom_id) {
        return make_error(ErrorCode::kConflict, "blinded value reused");
      }
      return wire::WithdrawResp{it->second.s_blinded};
    }
    CustomerAccount& acct = customers_.at(customer_id);
    if (acct.balance < value) return make_error(ErrorCode::kInsufficientFunds);
    if (value > acct.daily_limit - acct.withdrawn_today) {
      return make_error(ErrorCode::kDailyLimitExceeded);
    }
    acct.balance -= value;
    acct.withdrawn_today += value;
    debits_ += value;
    trace(tracer_, "W4", "debit " + customer_id + " " + value.to_string());
    req.countersig =
        crypto::coin_sign(key_.priv,
                          wire::withdraw_auth_payload(req.denom_id, req.f_blinded),
                          group_, rng_)
            .encode(group_);
    forwarded_.push_back(req);
    trace(tracer_, "W5", "countersign and forward to mint");
  }

  auto resp = mint_.withdraw(req);
  if (resp.code() == ErrorCode::kUnavailable) resp = mint_.withdraw(req);

  std::lock_guard lock(mu_);
  if (resp.ok()) {
    auto [it, fresh] = withdrawals_.emplace(
        key, WithdrawalRecord{customer_id, req.denom_id, req.f_blinded,
                              resp->s_blinded, value});
    if (fresh) {
      relayed_ += value;
      trace(tracer_, "W8", "relay blind signature to " + customer_id);
    } else {
      // A concurrent duplicate finished first; undo this debit.
      CustomerAccount& acct = customers_.at(customer_id);
      acct.balance += value;
      acct.withdrawn_today -= value;
      rollbacks_ += value;
    }
    return wire::WithdrawResp{it->second.s_blinded};
  }
  CustomerAccount& acct = customers_.at(customer_id);
  acct.balance += value;
  acct.withdrawn_today -= value;
  rollbacks_ += value;
  return rejected(resp.error());
}

Result<wire::DepositResp> Gateway::forward_deposit(const wire::DepositReq& req) {
  if (req.merchant_bank != bank_id_) {
    return make_error(ErrorCode::kAccountMismatch, req.merchant_bank);
  }
  Hash256 key = deposit_key(req);
  {
    std::lock_guard lock(mu_);
    auto it = merchants_.find(req.merchant_id);
    if (it == merchants_.end()) {
      return make_error(ErrorCode::kUnknownMerchant, req.merchant_id);
    }
    const MerchantAccount& m = it->second;
    if (!credited_deposits_.count(key) &&
        req.amount > m.inbound_limit - m.received_today) {
      return make_error(ErrorCode::kMerchantLimitExceeded);
    }
  }
  trace(tracer_, "S3", req.merchant_id + " is a customer, forward coin");
  auto resp = mint_.deposit(req);
  if (!resp.ok()) return rejected(resp.error());
  std::lock_guard lock(mu_);
  if (credited_deposits_.insert(key).second) {
    MerchantAccount& m = merchants_.at(req.merchant_id);
    m.balance += req.amount;
    m.received_today += req.amount;
    trace(tracer_, "S7", "credit " + req.merchant_id + " " +
                             req.amount.to_string());
  }
  trace(tracer_, "S8", "inform " + req.merchant_id);
  return resp;
}

Result<wire::RefundResp> Gateway::forward_refund(const std::string& customer_id,
                                                 const std::string& credential,
                                                 const wire::RefundReq& in) {
  CBDC_RETURN_IF_ERROR(authenticate(customer_id, credential));
  wire::RefundReq req = in;
  req.bank_id = bank_id_;
  auto resp = mint_.refund(req);
  if (!resp.ok()) return rejected(resp.error());
  std::lock_guard lock(mu_);
  if (credited_refunds_.insert(req.coin_pub).second) {
    customers_.at(customer_id).balance += resp->refunded;
  }
  return resp;
}

void Gateway::day_rollover() {
  std::lock_guard lock(mu_);
  for (auto& [id, c] : customers_) c.withdrawn_today = Amount::zero();
  for (auto& [id, m] : merchants_) m.received_today = Amount::zero();
}

Result<CustomerAccount> Gateway::customer(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = customers_.find(id);
  if (it == customers_.end()) return make_error(ErrorCode::kUnknownCustomer);
  return it->second;
}

Result<MerchantAccount> Gateway::merchant(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = merchants_.find(id);
  if (it == merchants_.end()) return make_error(ErrorCode::kUnknownMerchant);
  return it->second;
}

std::vector<WithdrawalRecord> Gateway::withdrawal_log() const {
  std::lock_guard lock(mu_);
  std::vector<WithdrawalRecord> out;
  for (const auto& [k, r] : withdrawals_) out.push_back(r);
  return out;
}

Amount Gateway::total_customer_debits() const {
  std::lock_guard lock(mu_);
  return debits_;
}

Amount Gateway::total_rollbacks() const {
  std::lock_guard lock(mu_);
  return rollbacks_;
}

Amount Gateway::total_relayed() const {
  std::lock_guard lock(mu_);
  return relayed_;
}

std::vector<wire::WithdrawReq> Gateway::forwarded() const {
  std::lock_guard lock(mu_);
  return forwarded_;
}

Bytes GatewayService::handle(const std::string& path, ByteView request) {
  auto error = [](const Error& e) {
    return wire::encode(wire::Message(wire::ErrorMsg::from(e)));
  };
  auto msg = wire::decode(request);
  if (!msg.ok()) return error(msg.error());
  if (path == "/deposit-forward") {
    auto* r = std::get_if<wire::DepositReq>(&*msg);
    if (!r) return error(make_error(ErrorCode::kUnknownType));
    return wire::encode_result(gateway_.forward_deposit(*r));
  }
  auto* c = std::get_if<wire::CustomerReq>(&*msg);
  if (path == "/withdraw") {
    if (!c) return error(make_error(ErrorCode::kUnknownType));
    auto inner = wire::decode_as<wire::WithdrawReq>(c->inner);
    if (!inner.ok()) return error(inner.error());
    return wire::encode_result(
        gateway_.withdraw_for_customer(c->customer_id, c->credential, *inner));
  }
  if (path == "/refund") {
    if (!c) return error(make_error(ErrorCode::kUnknownType));
    auto inner = wire::decode_as<wire::RefundReq>(c->inner);
    if (!inner.ok()) return error(inner.error());
    return wire::encode_result(
        gateway_.forward_refund(c->customer_id, c->credential, *inner));
  }
  return error(make_error(ErrorCode::kNotFound, "no such endpoint: " + path));
}

}  // namespace cbdc::bank
