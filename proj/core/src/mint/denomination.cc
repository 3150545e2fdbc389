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

#include "cbdc/mint/denomination.h"

#include <algorithm>
#include <mutex>

#include "json.hpp"

namespace cbdc::mint {

namespace {

std::string id_key(const Hash256& id) {
  return std::string(id.begin(), id.end());
}

}  // namespace

wire::DenomInfo DenominationInfo::to_wire() const {
  wire::DenomInfo d;
  d.denom_id = id;
  d.value = value;
  d.e = crypto::to_fixed_bytes(pub.e, pub.width());
  d.n = crypto::to_fixed_bytes(pub.n, pub.width());
  d.withdraw_start = withdraw_start;
  d.withdraw_end = withdraw_end;
  d.deposit_end = deposit_end;
  d.legal_end = legal_end;
  d.refresh_fee = refresh_fee;
  d.revoked = revoked;
  return d;
}

Hash256 denomination_id(const crypto::RsaPublicKey& pub) {
  wire::Writer w;
  w.raw(as_view("cbdc-denomination"));
  w.var_bytes(crypto::to_fixed_bytes(pub.e, pub.width()));
  w.var_bytes(crypto::to_fixed_bytes(pub.n, pub.width()));
  return sha256(w.bytes());
}

Result<RegistryView> RegistryView::from_keys(const wire::Keys& keys) {
  RegistryView view;
  view.group_ = crypto::GroupParams{crypto::from_bytes(keys.group_p),
                                    crypto::from_bytes(keys.group_q),
                                    crypto::from_bytes(keys.group_g)};
  CBDC_RETURN_IF_ERROR(view.group_.validate());
  for (const wire::DenomInfo& d : keys.denominations) {
    DenominationInfo info;
    info.pub = {crypto::from_bytes(d.e), crypto::from_bytes(d.n)};
    if (info.pub.n < 3 || d.n.size() != info.pub.width() ||
        d.e.size() != d.n.size() || denomination_id(info.pub) != d.denom_id) {
      return make_error(ErrorCode::kConfigError,
                        "published denomination key is inconsistent");
    }
    info.id = d.denom_id;
    info.value = d.value;
    info.withdraw_start = d.withdraw_start;
    info.withdraw_end = d.withdraw_end;
    info.deposit_end = d.deposit_end;
    info.legal_end = d.legal_end;
    info.refresh_fee = d.refresh_fee;
    info.revoked = d.revoked;
    view.denoms_.push_back(std::move(info));
  }
  return view;
}

const DenominationInfo* RegistryView::find(const Hash256& id) const {
  for (const auto& d : denoms_) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

std::vector<const DenominationInfo*> RegistryView::withdrawable(
    Timestamp now) const {
  std::vector<const DenominationInfo*> out;
  for (const auto& d : denoms_) {
    if (d.can_withdraw(now)) out.push_back(&d);
  }
  std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) {
    if (a->value != b->value) return a->value > b->value;
    if (a->withdraw_end != b->withdraw_end) {
      return a->withdraw_end > b->withdraw_end;
    }
    return a->id < b->id;
  });
  // Keep one denomination per value.
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto* a, const auto* b) {
                          return a->value == b->value;
                        }),
            out.end());
  return out;
}

Status validate_schedule(const std::vector<DenominationSpec>& schedule) {
  if (schedule.empty()) {
    return make_error(ErrorCode::kConfigError, "empty denomination schedule");
  }
  for (const auto& s : schedule) {
    if (!s.value.is_positive()) {
      return make_error(ErrorCode::kConfigError, "denomination value <= 0");
    }
    if (s.refresh_fee.is_negative()) {
      return make_error(ErrorCode::kConfigError, "negative refresh fee");
    }
    if (!(s.withdraw_start < s.withdraw_end &&
          s.withdraw_end <= s.deposit_end && s.deposit_end <= s.legal_end)) {
      return make_error(ErrorCode::kConfigError,
                        "windows must satisfy withdraw_start < withdraw_end "
                        "<= deposit_end <= legal_end");
    }
  }
  return ok_status();
}

Result<DenominationRegistry> DenominationRegistry::setup(
    const std::vector<DenominationSpec>& schedule,
    const crypto::CryptoProfile& profile, Drbg& rng) {
  CBDC_RETURN_IF_ERROR(validate_schedule(schedule));
  std::vector<DenominationKey> keys;
  for (const auto& s : schedule) {
    CBDC_ASSIGN_OR_RETURN(crypto::RsaKeyPair kp,
                          crypto::rsa_keygen(profile.rsa_bits, profile.rsa_e,
                                             rng));
    DenominationKey key;
    key.info.id = denomination_id(kp.pub);
    key.info.value = s.value;
    key.info.pub = kp.pub;
    key.info.withdraw_start = s.withdraw_start;
    key.info.withdraw_end = s.withdraw_end;
    key.info.deposit_end = s.deposit_end;
    key.info.legal_end = s.legal_end;
    key.info.refresh_fee = s.refresh_fee;
    key.priv = std::move(kp.priv);
    keys.push_back(std::move(key));
  }
  return from_keys(std::move(keys), profile.group);
}

Result<DenominationRegistry> DenominationRegistry::from_keys(
    std::vector<DenominationKey> keys, crypto::GroupParams group) {
  CBDC_RETURN_IF_ERROR(group.validate());
  if (keys.empty()) {
    return make_error(ErrorCode::kConfigError, "no denominations");
  }
  std::unordered_set<std::string> ids;
  for (const auto& k : keys) {
    if (!ids.insert(id_key(k.info.id)).second) {
      return make_error(ErrorCode::kConfigError, "duplicate denomination key");
    }
  }
  return DenominationRegistry(std::move(keys), std::move(group));
}

DenominationRegistry::DenominationRegistry(DenominationRegistry&& o) noexcept
    : keys_(std::move(o.keys_)),
      group_(std::move(o.group_)),
      revoked_(std::move(o.revoked_)) {}

Result<const DenominationKey*> DenominationRegistry::find(
    const Hash256& id) const {
  for (const auto& k : keys_) {
    if (k.info.id == id) return &k;
  }
  return make_error(ErrorCode::kNotFound, "unknown denomination");
}

std::vector<const DenominationKey*> DenominationRegistry::by_value(
    Amount value) const {
  std::vector<const DenominationKey*> out;
  for (const auto& k : keys_) {
    if (k.info.value == value) out.push_back(&k);
  }
  return out;
}

bool DenominationRegistry::is_revoked(const Hash256& id) const {
  std::shared_lock lock(revoked_mu_);
  return revoked_.count(id_key(id)) != 0;
}

Status DenominationRegistry::revoke(const Hash256& id) {
  if (!find(id).ok()) return make_error(ErrorCode::kNotFound);
  std::unique_lock lock(revoked_mu_);
  revoked_.insert(id_key(id));
  return ok_status();
}

DenominationInfo DenominationRegistry::info(const DenominationKey& key) const {
  DenominationInfo info = key.info;
  info.revoked = is_revoked(key.info.id);
  return info;
}

wire::Keys DenominationRegistry::published_keys() const {
  wire::Keys keys;
  keys.group_p = crypto::to_fixed_bytes(group_.p, group_.element_width());
  keys.group_q = crypto::to_fixed_bytes(group_.q, group_.scalar_width());
  keys.group_g = crypto::to_fixed_bytes(group_.g, group_.element_width());
  for (const auto& k : keys_) keys.denominations.push_back(info(k).to_wire());
  return keys;
}

std::string DenominationRegistry::published_document() const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["group"] = ordered_json{
      {"p", to_hex(crypto::to_fixed_bytes(group_.p, group_.element_width()))},
      {"q", to_hex(crypto::to_fixed_bytes(group_.q, group_.scalar_width()))},
      {"g", to_hex(crypto::to_fixed_bytes(group_.g, group_.element_width()))}};
  ordered_json list = ordered_json::array();
  for (const auto& k : keys_) {
    wire::DenomInfo d = info(k).to_wire();
    list.push_back(ordered_json{{"denom_id", to_hex(d.denom_id)},
                                {"value", d.value.minor()},
                                {"e", to_hex(d.e)},
                                {"n", to_hex(d.n)},
                                {"withdraw_start", d.withdraw_start},
                                {"withdraw_end", d.withdraw_end},
                                {"deposit_end", d.deposit_end},
                                {"legal_end", d.legal_end},
                                {"refresh_fee", d.refresh_fee.minor()},
                                {"revoked", d.revoked}});
  }
  doc["denominations"] = std::move(list);
  return doc.dump();
}

Hash256 DenominationRegistry::version() const {
  return sha256(as_view(published_document()));
}

}  // namespace cbdc::mint
