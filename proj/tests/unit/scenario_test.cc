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

#include "cbdc/sim/scenario.h"

#include <gtest/gtest.h>

#include "json.hpp"

namespace cbdc::sim {
namespace {

ScenarioConfig load(const std::string& name) {
  auto c = ScenarioConfig::load(std::string(CBDC_SCENARIO_DIR) + "/" + name);
  if (!c.ok()) throw std::runtime_error(c.error().to_string());
  return *c;
}

ScenarioResult run_ok(const ScenarioConfig& c) {
  auto r = run(c);
  if (!r.ok()) throw std::runtime_error(r.error().to_string());
  return std::move(*r);
}

TEST(ScenarioConfigTest, JsonRoundTrip) {
  ScenarioConfig c = load("faulty_network.json");
  auto again = ScenarioConfig::from_json(c.to_json());
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->to_json(), c.to_json());
  EXPECT_EQ(c.adversary_count("double-spender"), 5);
  EXPECT_EQ(c.faults.latency_max_ms, 80);
}

TEST(ScenarioConfigTest, RejectsBadInput) {
  EXPECT_EQ(ScenarioConfig::from_json("[]").code(), ErrorCode::kConfigError);
  EXPECT_EQ(ScenarioConfig::from_json(R"({"denominations":["1.00"],"script":"nope"})")
                .code(),
            ErrorCode::kConfigError);
  EXPECT_EQ(ScenarioConfig::from_json(R"({"denominations":[]})").code(),
            ErrorCode::kConfigError);
  EXPECT_EQ(
      ScenarioConfig::from_json(
          R"({"denominations":["1.00"],"adversaries":[{"name":"ghost"}]})")
          .code(),
      ErrorCode::kConfigError);
  EXPECT_EQ(ScenarioConfig::from_json(
                R"({"denominations":["1.00"],"faults":{"loss":1.5}})")
                .code(),
            ErrorCode::kConfigError);
}

TEST(ScenarioTest, HappyPathIsGreen) {
  ScenarioConfig c = load("happy_path.json");
  auto r = run_ok(c);
  EXPECT_TRUE(r.report.green) << r.report.first_violation;
  EXPECT_EQ(r.report.double_spend_attempts, 0u);
  EXPECT_GE(r.report.withdrawals, 100u);
  EXPECT_GT(r.report.payments_delivered, 200u);
  EXPECT_EQ(r.report.payments_failed, 0u);
  EXPECT_TRUE(scenario_status(r.report).ok());
  auto j = nlohmann::json::parse(r.report.to_json());
  EXPECT_TRUE(j["green"].get<bool>());
  EXPECT_EQ(j["store"]["records"].get<std::size_t>(), r.report.store_records);
}

TEST(ScenarioTest, FaultyNetworkStaysConserved) {
  auto r = run_ok(load("faulty_network.json"));
  EXPECT_TRUE(r.report.green) << r.report.first_violation;
  EXPECT_GT(r.report.bus.lost, 0u);
  EXPECT_GT(r.report.bus.duplicated, 0u);
  EXPECT_EQ(r.report.double_spend_rejections * 2,
            r.report.double_spend_attempts);
  EXPECT_GT(r.report.forfeits, 0u);
  EXPECT_LT(r.report.forfeits, r.report.cheat_attempts);
}

TEST(ScenarioTest, DuplicationLeavesBalancesUnchanged) {
  ScenarioConfig c = load("happy_path.json");
  c.customers = 20;
  auto plain = run_ok(c);
  c.faults.duplication = 0.10;
  auto dup = run_ok(c);
  ASSERT_TRUE(plain.report.green);
  ASSERT_TRUE(dup.report.green) << dup.report.first_violation;
  EXPECT_GT(dup.report.bus.duplicated, 0u);
  EXPECT_EQ(dup.report.balances_digest, plain.report.balances_digest);
}

TEST(ScenarioTest, StolenKeyIsFlaggedByAudit) {
  auto r = run_ok(load("stolen_key.json"));
  EXPECT_TRUE(r.report.green) << r.report.first_violation;
  EXPECT_GT(r.report.forged_accepted, 0u);
}

TEST(ScenarioTest, FiguresReplayAllSteps) {
  auto r = run_ok(load("figures.json"));
  EXPECT_TRUE(r.report.green) << r.report.first_violation;
  EXPECT_EQ(r.report.steps.size(), 18u);
  EXPECT_EQ(r.report.customer_debits, Amount(500));
  EXPECT_EQ(r.report.merchant_credits, Amount(500));
}

TEST(ScenarioTest, RevocationRefundsUnspentOnly) {
  auto r = run_ok(load("revocation.json"));
  EXPECT_TRUE(r.report.green) << r.report.first_violation;
  EXPECT_EQ(r.report.refunds, 6u);
  EXPECT_EQ(r.report.refunded, Amount(600));
}

TEST(ScenarioTest, ConspiringMerchantLosesOneClaim) {
  auto r = run_ok(load("conspiring_merchant.json"));
  EXPECT_TRUE(r.report.green) << r.report.first_violation;
  EXPECT_EQ(r.report.double_spend_rejections, 2u);
}

TEST(ScenarioTest, SameSeedSameLog) {
  ScenarioConfig c = load("faulty_network.json");
  c.customers = 8;
  auto a = run_ok(c);
  auto b = run_ok(c);
  EXPECT_EQ(a.log.text(), b.log.text());
  EXPECT_EQ(a.report.to_json(), b.report.to_json());
  c.seed += 1;
  auto other = run_ok(c);
  EXPECT_NE(other.log.text(), a.log.text());
}

TEST(ScenarioTest, ViolationTurnsReportRed) {
  ScenarioConfig c = load("figures.json");
  c.script = "conspiring-merchant";
  auto r = run_ok(c);
  EXPECT_FALSE(r.report.green);
  EXPECT_FALSE(r.report.first_violation.empty());
  EXPECT_EQ(scenario_status(r.report).code(), ErrorCode::kScenarioError);
}

}  // namespace
}  // namespace cbdc::sim
