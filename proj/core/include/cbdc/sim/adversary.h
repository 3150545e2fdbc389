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

#ifndef CBDC_SIM_ADVERSARY_H_
#define CBDC_SIM_ADVERSARY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cbdc/crypto/params.h"
#include "cbdc/sim/deployment.h"
#include "cbdc/status.h"
#include "cbdc/wallet/coin.h"
#include "cbdc/wire/messages.h"

namespace cbdc::sim {

struct RefresherReport {
  int trials = 0;
  int kappa = 0;
  int caught = 0;
  // Uncaught cheats whose hidden coin verified.
  int escaped_coins = 0;
  double rate() const { return trials ? double(caught) / trials : 0.0; }
};

// Wallet refreshes a coin while committing one bad index chosen uniformly;
// counts how often the mint forfeits it. kappa == 1 runs against a mint
// configured without the cut-and-choose check.
Result<RefresherReport> cheating_refresher(
    int trials, int kappa, std::uint64_t seed,
    crypto::CryptoMode mode = crypto::CryptoMode::kToy);

struct RaceReport {
  int repetitions = 0;
  int accepted = 0;
  int double_spend = 0;
  int other = 0;
  int conservation_violations = 0;
  // accepted / double_spend per repetition.
  std::vector<std::pair<int, int>> per_rep;
};

// `threads` depositors race 1.00 deposits against one 10.00 coin.
Result<RaceReport> double_spend_race(
    int threads, int repetitions, std::uint64_t seed,
    crypto::CryptoMode mode = crypto::CryptoMode::kToy);

struct ConspiracyOutcome {
  bool customer_first = false;
  ErrorCode customer_result = ErrorCode::kOk;
  ErrorCode merchant_result = ErrorCode::kOk;
  // The link reply carried nothing that names the customer.
  bool link_anonymous = false;
};

// Deposit request for `amount` of `coin` against `contract`, signed with
// the coin key directly; bypasses the wallet's residual bookkeeping.
wire::DepositReq sign_deposit(const wallet::Coin& coin,
                              const wire::ContractTerms& contract,
                              Amount amount, const crypto::GroupParams& group,
                              Drbg& rng);

// One round inside an existing deployment: `customer` refreshes a fresh
// 10.00 coin into 2.00 change and hands the change secrets to merchant
// `m_take`; the customer reclaims through link at merchant `m_reclaim`.
Result<ConspiracyOutcome> conspiracy_round(Deployment& d, int customer,
                                           int m_take, int m_reclaim,
                                           bool customer_first, Drbg& rng);

// Merchant takes payment as a refreshed change coin instead of a deposit;
// the customer derives the same coin through link. Runs both orders.
Result<std::vector<ConspiracyOutcome>> conspiring_merchant(
    std::uint64_t seed, crypto::CryptoMode mode = crypto::CryptoMode::kToy);

struct ForgeryReport {
  Hash256 denom_id{};
  int forged = 0;
  int accepted = 0;
  Amount forged_value;
};

// Holder of a denomination's private key signs fresh coin keys and
// deposits them at `merchant`, enough to push deposits past issuance.
ForgeryReport stolen_key_forgery(Deployment& d, const Hash256& denom_id,
                                 int merchant, Drbg& rng);

}  // namespace cbdc::sim

#endif  // CBDC_SIM_ADVERSARY_H_
