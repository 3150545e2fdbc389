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

#ifndef CBDC_NET_TRANSPORT_H_
#define CBDC_NET_TRANSPORT_H_

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "cbdc/bytes.h"
#include "cbdc/status.h"
#include "cbdc/wire/messages.h"

namespace cbdc::net {

using Handler = std::function<Bytes(const std::string& path, ByteView request)>;

// Request/response channel to named endpoints. Failures of the channel
// itself surface as Unavailable; protocol errors travel inside the reply.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void bind(const std::string& endpoint, Handler handler) = 0;
  virtual Result<Bytes> call(const std::string& endpoint,
                             const std::string& path, ByteView request) = 0;
};

// Calls handlers in-process with no faults.
class DirectTransport final : public Transport {
 public:
  void bind(const std::string& endpoint, Handler handler) override;
  Result<Bytes> call(const std::string& endpoint, const std::string& path,
                     ByteView request) override;

 private:
  std::mutex mu_;
  std::map<std::string, Handler> handlers_;
};

// Encodes `req`, sends it and decodes a reply of type Resp.
template <typename Resp, typename Req>
Result<Resp> rpc(Transport& t, const std::string& endpoint,
                 const std::string& path, const Req& req) {
  Bytes body = wire::encode(wire::Message(req));
  CBDC_ASSIGN_OR_RETURN(Bytes reply, t.call(endpoint, path, body));
  return wire::decode_as<Resp>(reply);
}

class MintClient {
 public:
  MintClient(Transport& transport, std::string endpoint)
      : t_(&transport), endpoint_(std::move(endpoint)) {}

  Result<wire::Keys> keys() {
    return rpc<wire::Keys>(*t_, endpoint_, "/keys", wire::KeysReq{});
  }
  Result<wire::WithdrawResp> withdraw(const wire::WithdrawReq& r) {
    return rpc<wire::WithdrawResp>(*t_, endpoint_, "/withdraw", r);
  }
  Result<wire::DepositResp> deposit(const wire::DepositReq& r) {
    return rpc<wire::DepositResp>(*t_, endpoint_, "/deposit", r);
  }
  Result<wire::RefreshChallenge> refresh_commit(
      const wire::RefreshCommitReq& r) {
    return rpc<wire::RefreshChallenge>(*t_, endpoint_, "/refresh-commit", r);
  }
  Result<wire::RefreshRevealResp> refresh_reveal(
      const wire::RefreshRevealReq& r) {
    return rpc<wire::RefreshRevealResp>(*t_, endpoint_, "/refresh-reveal", r);
  }
  Result<wire::LinkResp> link(ByteView coin_pub) {
    return rpc<wire::LinkResp>(*t_, endpoint_, "/link",
                               wire::LinkReq{Bytes(coin_pub.begin(),
                                                   coin_pub.end())});
  }
  Result<wire::RefundResp> refund(const wire::RefundReq& r) {
    return rpc<wire::RefundResp>(*t_, endpoint_, "/refund", r);
  }
  Result<wire::AuditResp> audit(const Hash256& denom_id) {
    return rpc<wire::AuditResp>(*t_, endpoint_, "/audit",
                                wire::AuditReq{denom_id});
  }

 private:
  Transport* t_;
  std::string endpoint_;
};

class GatewayClient {
 public:
  GatewayClient(Transport& transport, std::string endpoint)
      : t_(&transport), endpoint_(std::move(endpoint)) {}

  const std::string& endpoint() const { return endpoint_; }

  Result<wire::WithdrawResp> withdraw(const std::string& customer_id,
                                      const std::string& credential,
                                      const wire::WithdrawReq& r) {
    return rpc<wire::WithdrawResp>(
        *t_, endpoint_, "/withdraw",
        wire::CustomerReq{customer_id, credential, wire::encode(r)});
  }
  Result<wire::RefundResp> refund(const std::string& customer_id,
                                  const std::string& credential,
                                  const wire::RefundReq& r) {
    return rpc<wire::RefundResp>(
        *t_, endpoint_, "/refund",
        wire::CustomerReq{customer_id, credential, wire::encode(r)});
  }
  Result<wire::DepositResp> deposit(const wire::DepositReq& r) {
    return rpc<wire::DepositResp>(*t_, endpoint_, "/deposit-forward", r);
  }

 private:
  Transport* t_;
  std::string endpoint_;
};

}  // namespace cbdc::net

#endif  // CBDC_NET_TRANSPORT_H_
