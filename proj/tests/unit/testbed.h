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

#ifndef CBDC_TESTS_UNIT_TESTBED_H_
#define CBDC_TESTS_UNIT_TESTBED_H_

#include <memory>

#include "cbdc/clock.h"
#include "cbdc/net/transport.h"
#include "cbdc/sim/deployment.h"

namespace cbdc::testing {

inline constexpr Timestamp kStart = 1'767'225'600;  // 2026-01-01

// In-process deployment without faults.
struct Testbed {
  explicit Testbed(sim::DeploymentConfig config) : clock(kStart) {
    if (config.schedule.empty()) {
      config.schedule = sim::make_schedule(
          {Amount(1000), Amount(500), Amount(200), Amount(100), Amount(50),
           Amount(20), Amount(10), Amount(5), Amount(2), Amount(1)},
          kStart);
    }
    auto d = sim::Deployment::create(config, transport, clock);
    if (!d.ok()) throw std::runtime_error(d.error().to_string());
    deployment = std::move(d).value();
    for (int i = 0; i < deployment->customers(); ++i) {
      auto s = deployment->wallet(i).sync_keys();
      if (!s.ok()) throw std::runtime_error(s.error().to_string());
    }
  }

  mint::Mint& mint() { return deployment->mint(); }
  wallet::Wallet& wallet(int i = 0) { return deployment->wallet(i); }
  bank::Gateway& gateway(int i = 0) { return deployment->gateway(i); }
  merchant::Merchant& merchant(int i = 0) { return deployment->merchant(i); }

  const mint::DenominationInfo& denom(Amount value) {
    for (const auto& d : deployment->registry().denominations()) {
      if (d.value == value) return d;
    }
    throw std::runtime_error("no denomination " + value.to_string());
  }

  ManualClock clock;
  net::DirectTransport transport;
  std::unique_ptr<sim::Deployment> deployment;
};

}  // namespace cbdc::testing

#endif  // CBDC_TESTS_UNIT_TESTBED_H_
