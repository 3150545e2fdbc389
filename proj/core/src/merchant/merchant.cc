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

#include "cbdc/merchant/merchant.h"

#include <algorithm>

namespace cbdc::merchant {

Merchant::Merchant(MerchantConfig config, net::GatewayClient gateway, Drbg rng,
                   Sleeper sleep)
    : config_(std::move(config)),
      gateway_(std::move(gateway)),
      rng_(std::move(rng)),
      sleep_(std::move(sleep)) {}

wire::ContractTerms Merchant::create_contract(Amount amount,
                                              std::string description) {
  CBDC_EXPECTS(amount.is_positive(), "contract amount must be positive");
  wire::ContractTerms c;
  c.bank_id = config_.bank_id;
  c.merchant_id = config_.merchant_id;
  c.amount = amount;
  c.description = to_bytes(description);
  c.nonce = rng_.hash256();
  return c;
}

Result<std::vector<wire::DepositReq>> Merchant::validate_payment(
    const wire::ContractTerms& contract,
    const std::vector<wire::DepositReq>& parts,
    const mint::RegistryView& registry) {
  const auto& group = registry.group();
  Hash256 h = contract.hash();
  Amount sum;
  for (const auto& p : parts) {
    const auto* d = registry.find(p.denom_id);
    if (!d) return make_error(ErrorCode::kUnknownDenomination);
    if (p.coin_pub.size() != group.element_width() ||
        !crypto::is_subgroup_element(group, crypto::from_bytes(p.coin_pub))) {
      return make_error(ErrorCode::kBadCoinSignature, "invalid coin key");
    }
    bool bound = p.contract_hash == h && p.merchant_bank == contract.bank_id &&
                 p.merchant_id == contract.merchant_id;
    if (!bound || !p.amount.is_positive() ||
        !crypto::coin_sig_verify(
            crypto::from_bytes(p.coin_pub),
            wire::deposit_payload(h, contract.bank_id, contract.merchant_id,
                                  p.amount),
            p.coin_sig, group)) {
      return make_error(ErrorCode::kBadCoinSignature);
    }
    if (p.denom_sig.size() != d->pub.width() ||
        !crypto::rsa_verify(d->pub, crypto::fdh(d->pub.n, p.coin_pub),
                            crypto::from_bytes(p.denom_sig))) {
      return make_error(ErrorCode::kBadDenomSignature);
    }
    sum += p.amount;
  }
  if (sum != contract.amount) {
    return make_error(ErrorCode::kAmountMismatch,
                      sum.to_string() + " != " + contract.amount.to_string());
  }
  return parts;
}

wire::Settlement Merchant::settle(const wire::ContractTerms& contract,
                                  const std::vector<wire::DepositReq>& parts) {
  wire::Settlement out;
  out.contract_hash = contract.hash();
  out.delivered = !parts.empty();
  for (const auto& p : parts) {
    auto r = gateway_.deposit(p);
    auto delay = config_.retry.initial_delay;
    for (int i = 1; i < config_.retry.max_attempts &&
                    r.code() == ErrorCode::kUnavailable;
         ++i) {
      if (sleep_) sleep_(delay);
      delay = std::min(delay * 2, config_.retry.max_delay);
      r = gateway_.deposit(p);
    }
    wire::PartStatus st{p.coin_pub, 0, 0};
    if (!r.ok()) {
      st.code = static_cast<std::uint16_t>(r.error().code);
      st.inner = static_cast<std::uint16_t>(r.error().inner);
      out.delivered = false;
    }
    out.parts.push_back(std::move(st));
  }
  if (out.delivered) trace(tracer_, "S9", "deliver");
  return out;
}

wire::Settlement Merchant::receive(const wire::Payment& payment,
                                   const mint::RegistryView& registry) {
  auto valid = validate_payment(payment.contract, payment.parts, registry);
  if (!valid.ok()) {
    wire::Settlement out;
    out.contract_hash = payment.contract.hash();
    for (const auto& p : payment.parts) {
      out.parts.push_back({p.coin_pub,
                           static_cast<std::uint16_t>(valid.error().code), 0});
    }
    return out;
  }
  trace(tracer_, "S2", "coin and denomination signatures valid, forward");
  return settle(payment.contract, *valid);
}

}  // namespace cbdc::merchant
