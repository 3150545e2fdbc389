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

#ifndef CBDC_MINT_MINT_H_
#define CBDC_MINT_MINT_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/bytes.h"
#include "cbdc/clock.h"
#include "cbdc/mint/denomination.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"
#include "cbdc/store/kv_store.h"
#include "cbdc/store/sharded_store.h"
#include "cbdc/trace.h"
#include "cbdc/wire/messages.h"
#include "cbdc/wire/records.h"

namespace cbdc::mint {

inline constexpr int kMaxKappa = 16;

struct MintConfig {
  // 1 disables the cut-and-choose check entirely.
  int min_kappa = 2;
  int max_kappa = kMaxKappa;
  // Seeds the generator gamma is drawn from.
  std::uint64_t gamma_seed = 0;
};

class Mint {
 public:
  Mint(DenominationRegistry registry, store::ShardedStore spent,
       std::unique_ptr<store::KvStore> issuance, const Clock& clock,
       MintConfig config = {});

  Mint(const Mint&) = delete;
  Mint& operator=(const Mint&) = delete;

  // Bank accounts hold the reserves withdrawals draw on and receive
  // deposit and refund credits.
  Status register_bank(const std::string& bank_id,
                       const crypto::BigInt& countersig_pub, Amount reserves);
  Result<Amount> bank_balance(const std::string& bank_id) const;
  Status credit_reserves(const std::string& bank_id, Amount amount);

  wire::Keys keys() const { return registry_.published_keys(); }
  Result<wire::WithdrawResp> withdraw(const wire::WithdrawReq& req);
  Result<wire::DepositResp> deposit(const wire::DepositReq& req);
  Result<wire::RefreshChallenge> refresh_commit(
      const wire::RefreshCommitReq& req);
  Result<wire::RefreshRevealResp> refresh_reveal(
      const wire::RefreshRevealReq& req);
  wire::LinkResp link(ByteView coin_pub) const;
  Result<wire::RevocationNotice> revoke_denomination(const Hash256& denom_id);
  Result<wire::RefundResp> refund_revoked(const wire::RefundReq& req);
  Result<wire::AuditResp> audit_denomination(const Hash256& denom_id) const;
  // Drops spent records of denominations whose legal_end is before `now`.
  std::size_t gc(Timestamp now);

  std::optional<wire::SpentRecord> spent_record(ByteView coin_pub) const;
  std::optional<wire::IssuanceRecord> issuance_record(
      ByteView f_blinded) const;

  const DenominationRegistry& registry() const { return registry_; }
  const store::ShardedStore& spent_store() const { return spent_; }
  const Clock& clock() const { return clock_; }
  void set_tracer(Tracer t) { tracer_ = std::move(t); }

 private:
  struct Counters {
    std::uint64_t issued_count = 0;
    Amount issued;
    Amount change_issued;
    Amount deposited;
    Amount refunded;
    Amount forfeited;
    Amount melted;
    Amount reserved;
  };
  struct Bank {
    crypto::BigInt countersig_pub;
    Amount balance;
  };

  Result<const DenominationKey*> lookup(const Hash256& id) const;
  Status check_coin(const DenominationKey& key, ByteView coin_pub,
                    ByteView denom_sig) const;
  Status credit(const std::string& bank_id, Amount amount);
  void count(const Hash256& id, void (*fn)(Counters&, Amount), Amount v);
  std::uint8_t draw_gamma(int kappa);
  bool verify_reveals(const wire::RefreshSessionRecord& session,
                      const DenominationKey& target, const crypto::BigInt& c,
                      const std::vector<wire::Reveal>& reveals) const;

  DenominationRegistry registry_;
  store::ShardedStore spent_;
  std::unique_ptr<store::KvStore> issuance_;
  const Clock& clock_;
  MintConfig config_;
  Tracer tracer_;

  mutable std::mutex banks_mu_;
  std::map<std::string, Bank> banks_;
  mutable std::mutex counters_mu_;
  std::map<Hash256, Counters> counters_;
  std::mutex issue_mu_;
  std::mutex gamma_mu_;
  Drbg gamma_rng_;
};

// Endpoint table over the wire encoding; every path takes one encoded
// request and returns one encoded response or ErrorMsg.
class MintService {
 public:
  explicit MintService(Mint& mint) : mint_(mint) {}

  static const std::vector<std::string>& paths();
  Bytes handle(const std::string& path, ByteView request);

 private:
  Mint& mint_;
};

}  // namespace cbdc::mint

#endif  // CBDC_MINT_MINT_H_
