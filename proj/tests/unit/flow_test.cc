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

#include <gtest/gtest.h>

#include "testbed.h"

namespace cbdc {
namespace {

using testing::Testbed;

TEST(FlowTest, WithdrawPayDeposit) {
  Testbed tb(sim::DeploymentConfig{});
  auto coins = tb.wallet().withdraw(Amount(300));
  ASSERT_TRUE(coins.ok()) << coins.error().to_string();
  EXPECT_EQ(coins->size(), 2u);
  EXPECT_EQ(tb.wallet().balance(), Amount(300));
  EXPECT_EQ(tb.gateway().customer("customer-0")->balance, Amount(100'000 - 300));

  auto contract = tb.merchant().create_contract(Amount(250), "book");
  auto payment = tb.wallet().pay(contract);
  ASSERT_TRUE(payment.ok()) << payment.error().to_string();
  auto settlement = tb.merchant().receive(*payment, tb.deployment->registry());
  EXPECT_TRUE(settlement.delivered);
  EXPECT_EQ(tb.gateway().merchant("merchant-0")->balance, Amount(250));
  EXPECT_EQ(tb.wallet().balance(), Amount(50));
}

TEST(FlowTest, RefreshAndLink) {
  Testbed tb(sim::DeploymentConfig{});
  auto coins = tb.wallet().withdraw(Amount(1000));
  ASSERT_TRUE(coins.ok());
  Bytes pub = (*coins)[0].pub;
  auto contract = tb.merchant().create_contract(Amount(600), "x");
  auto payment = tb.wallet().pay(contract);
  ASSERT_TRUE(payment.ok());
  ASSERT_TRUE(tb.merchant().receive(*payment, tb.deployment->registry()).delivered);

  auto change = tb.wallet().refresh(pub, tb.denom(Amount(200)).id);
  ASSERT_TRUE(change.ok()) << change.error().to_string();
  EXPECT_EQ(tb.wallet().find(pub)->local_residual, Amount(200));
  auto rest = tb.wallet().refresh_residual(pub);
  ASSERT_TRUE(rest.ok()) << rest.error().to_string();
  EXPECT_EQ(tb.wallet().find(pub)->local_residual, Amount(0));

  auto linked = tb.wallet().derive_linked_change(*tb.wallet().find(pub));
  ASSERT_TRUE(linked.ok());
  ASSERT_EQ(linked->size(), 2u);
  EXPECT_EQ((*linked)[0].pub, change->pub);
  EXPECT_EQ((*linked)[0].priv, change->priv);
  EXPECT_EQ((*linked)[0].denom_sig, change->denom_sig);
  auto rec = tb.mint().spent_record(pub);
  ASSERT_TRUE(rec.has_value());
  EXPECT_EQ(rec->spent_total, Amount(1000));
}

}  // namespace
}  // namespace cbdc
