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

#include "cbdc/sim/fixtures.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cbdc/sim/deployment.h"

namespace cbdc::sim {

namespace {

constexpr Timestamp kEpoch = 1'767'225'600;

// Keeps the first request and reply of each message type that crosses it.
class RecordingTransport final : public net::Transport {
 public:
  void bind(const std::string& endpoint, net::Handler handler) override {
    inner_.bind(endpoint, std::move(handler));
  }
  Result<Bytes> call(const std::string& endpoint, const std::string& path,
                     ByteView request) override {
    keep(request);
    auto reply = inner_.call(endpoint, path, request);
    if (reply.ok()) keep(*reply);
    return reply;
  }
  void keep(ByteView bytes) {
    if (bytes.size() < wire::kEnvelopeHeaderSize) return;
    auto type = static_cast<wire::MsgType>(bytes[1]);
    seen_.try_emplace(type, bytes.begin(), bytes.end());
  }
  std::map<wire::MsgType, Bytes>& seen() { return seen_; }

 private:
  net::DirectTransport inner_;
  std::map<wire::MsgType, Bytes> seen_;
};

}  // namespace

std::string fixture_file_name(wire::MsgType type) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d_", static_cast<int>(type));
  return buf + std::string(wire::msg_type_name(type)) + ".bin";
}

Result<std::map<wire::MsgType, Bytes>> golden_messages(std::uint64_t seed,
                                                       crypto::CryptoMode mode) {
  RecordingTransport transport;
  ManualClock clock(kEpoch);
  DeploymentConfig config;
  config.mode = mode;
  config.seed = seed;
  config.merchants = 1;
  config.schedule = make_schedule(
      {Amount(1000), Amount(500), Amount(200), Amount(100), Amount(50),
       Amount(20), Amount(10), Amount(5), Amount(2), Amount(1)},
      kEpoch);
  CBDC_ASSIGN_OR_RETURN(auto d, Deployment::create(config, transport, clock));
  wallet::Wallet& w = d->wallet(0);
  merchant::Merchant& m = d->merchant(0);
  CBDC_RETURN_IF_ERROR(w.sync_keys());
  auto denom = [&](Amount v) -> const mint::DenominationInfo& {
    for (const auto& info : w.registry().denominations()) {
      if (info.value == v) return info;
    }
    throw ContractViolation("fixture schedule lacks " + v.to_string());
  };

  // Withdraw, then pay with two coins so the payment has several parts.
  CBDC_ASSIGN_OR_RETURN(auto ten, w.withdraw_denomination(denom(Amount(1000))));
  CBDC_ASSIGN_OR_RETURN(auto five, w.withdraw_denomination(denom(Amount(500))));
  auto contract = m.create_contract(Amount(1300), "fixture order");
  CBDC_ASSIGN_OR_RETURN(wire::Payment payment, w.pay(contract));
  transport.keep(wire::encode(payment));
  wire::Settlement settled = m.receive(payment, d->registry());
  transport.keep(wire::encode(settled));
  if (!settled.delivered) {
    return make_error(ErrorCode::kScenarioError, "fixture payment failed");
  }
  // A replayed part at a second contract yields an error reply.
  auto again = m.create_contract(Amount(1000), "fixture replay");
  net::GatewayClient gw(transport, bank_id(0));
  wire::DepositReq replay = payment.parts.front();
  replay.contract_hash = again.hash();
  (void)gw.deposit(replay);

  // Refresh the residual of the partly spent coin, then link it.
  const wallet::Coin* partial = nullptr;
  for (const auto& c : w.coins()) {
    if (c.local_residual.is_positive() && c.local_residual < c.face_value) {
      partial = &c;
    }
  }
  if (!partial) return make_error(ErrorCode::kScenarioError, "no residual");
  wallet::Coin parent = *partial;
  CBDC_RETURN_IF_ERROR(w.refresh(parent.pub, denom(Amount(100)).id));
  CBDC_RETURN_IF_ERROR(w.derive_linked_change(*w.find(parent.pub)));

  // Revocation and refund of an untouched coin.
  CBDC_ASSIGN_OR_RETURN(auto spare, w.withdraw_denomination(denom(Amount(200))));
  CBDC_ASSIGN_OR_RETURN(auto notice,
                        d->mint().revoke_denomination(spare.denom_id));
  transport.keep(wire::encode(notice));
  auto rr = w.recover_revoked(notice);
  if (rr.refunded != spare.face_value) {
    return make_error(ErrorCode::kScenarioError, "fixture refund failed");
  }
  net::MintClient mint(transport, kMintEndpoint);
  CBDC_RETURN_IF_ERROR(mint.audit(ten.denom_id));
  (void)five;

  auto& seen = transport.seen();
  for (int t = 1; t <= 21; ++t) {
    if (!seen.count(static_cast<wire::MsgType>(t))) {
      return make_error(ErrorCode::kScenarioError,
                        "no fixture for type " + std::to_string(t));
    }
  }
  return seen;
}

Status write_fixtures(const std::map<wire::MsgType, Bytes>& messages,
                      const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  for (const auto& [type, bytes] : messages) {
    std::ofstream out(dir + "/" + fixture_file_name(type), std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) return make_error(ErrorCode::kIoError, "cannot write " + dir);
  }
  return ok_status();
}

Result<std::map<wire::MsgType, Bytes>> read_fixtures(const std::string& dir) {
  std::map<wire::MsgType, Bytes> out;
  for (int t = 1; t <= 21; ++t) {
    auto type = static_cast<wire::MsgType>(t);
    std::ifstream in(dir + "/" + fixture_file_name(type), std::ios::binary);
    if (!in) {
      return make_error(ErrorCode::kIoError,
                        "missing " + fixture_file_name(type));
    }
    out[type] = Bytes(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

}  // namespace cbdc::sim
