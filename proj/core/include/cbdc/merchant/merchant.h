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

#ifndef CBDC_MERCHANT_MERCHANT_H_
#define CBDC_MERCHANT_MERCHANT_H_

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "cbdc/amount.h"
#include "cbdc/mint/denomination.h"
#include "cbdc/net/transport.h"
#include "cbdc/rng.h"
#include "cbdc/status.h"
#include "cbdc/trace.h"
#include "cbdc/wire/messages.h"

namespace cbdc::merchant {

struct RetryPolicy {
  int max_attempts = 6;
  std::chrono::milliseconds initial_delay{50};
  std::chrono::milliseconds max_delay{2000};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

struct MerchantConfig {
  std::string bank_id;
  std::string merchant_id;
  RetryPolicy retry;
};

class Merchant {
 public:
  Merchant(MerchantConfig config, net::GatewayClient gateway, Drbg rng,
           Sleeper sleep);

  const MerchantConfig& config() const { return config_; }
  void set_tracer(Tracer t) { tracer_ = std::move(t); }

  wire::ContractTerms create_contract(Amount amount, std::string description);

  // Checks every part and that the parts add up to the contract amount.
  static Result<std::vector<wire::DepositReq>> validate_payment(
      const wire::ContractTerms& contract,
      const std::vector<wire::DepositReq>& parts,
      const mint::RegistryView& registry);

  // Deposits every part through the gateway. Unavailable is retried with
  // exponential backoff; delivered is set only if every part is confirmed.
  wire::Settlement settle(const wire::ContractTerms& contract,
                          const std::vector<wire::DepositReq>& parts);

  // validate_payment followed by settle. A rejected payment is reported
  // with every part carrying the validation error.
  wire::Settlement receive(const wire::Payment& payment,
                           const mint::RegistryView& registry);

 private:
  MerchantConfig config_;
  net::GatewayClient gateway_;
  Drbg rng_;
  Sleeper sleep_;
  Tracer tracer_;
};

}  // namespace cbdc::merchant

#endif  // CBDC_MERCHANT_MERCHANT_H_
