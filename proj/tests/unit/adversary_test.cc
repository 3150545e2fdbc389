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

#include "cbdc/sim/adversary.h"

#include <gtest/gtest.h>

namespace cbdc::sim {
namespace {

TEST(AdversaryTest, CheatingRefresherIsCaughtSometimes) {
  auto r = cheating_refresher(60, 3, 11);
  ASSERT_TRUE(r.ok()) << r.error().message;
  EXPECT_GT(r->caught, 20);
  EXPECT_LT(r->caught, 60);
  EXPECT_EQ(r->caught + r->escaped_coins, 60);
}

TEST(AdversaryTest, KappaOneNeverCatches) {
  auto r = cheating_refresher(20, 1, 12);
  ASSERT_TRUE(r.ok()) << r.error().message;
  EXPECT_EQ(r->caught, 0);
  EXPECT_EQ(r->escaped_coins, 20);
}

TEST(AdversaryTest, RaceAcceptsExactlyFaceValue) {
  auto r = double_spend_race(32, 3, 13);
  ASSERT_TRUE(r.ok()) << r.error().message;
  for (auto [ok, ds] : r->per_rep) {
    EXPECT_EQ(ok, 10);
    EXPECT_EQ(ds, 22);
  }
  EXPECT_EQ(r->other, 0);
  EXPECT_EQ(r->conservation_violations, 0);
}

TEST(AdversaryTest, ConspiracyAllowsOnlyOneClaim) {
  auto r = conspiring_merchant(14);
  ASSERT_TRUE(r.ok()) << r.error().message;
  ASSERT_EQ(r->size(), 2u);
  for (const auto& o : *r) {
    EXPECT_TRUE(o.link_anonymous);
    ErrorCode first = o.customer_first ? o.customer_result : o.merchant_result;
    ErrorCode second = o.customer_first ? o.merchant_result : o.customer_result;
    EXPECT_EQ(first, ErrorCode::kOk);
    EXPECT_EQ(second, ErrorCode::kDoubleSpend);
  }
}

}  // namespace
}  // namespace cbdc::sim
