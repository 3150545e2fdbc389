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

#include <filesystem>

#include "cbdc/sim/adversary.h"
#include "cbdc/store/sharded_store.h"
#include "testbed.h"

namespace cbdc {
namespace {

using testing::kStart;
using testing::Testbed;

sim::DeploymentConfig small_config() {
  sim::DeploymentConfig c;
  c.schedule = sim::make_schedule({Amount(1000), Amount(500), Amount(400),
                                   Amount(200), Amount(100)},
                                  kStart);
  c.shards = 4;
  c.customer_balance = Amount(10'000'000);
  return c;
}

class MintTest : public ::testing::Test {
 protected:
  MintTest() : tb(small_config()), rng(99) {}

  const crypto::GroupParams& group() { return tb.mint().registry().group(); }

  wallet::Coin coin(Amount value) {
    auto c = tb.wallet().withdraw_denomination(tb.denom(value));
    if (!c.ok()) throw std::runtime_error(c.error().to_string());
    return *c;
  }

  wire::DepositReq deposit_req(const wallet::Coin& c, Amount amount) {
    auto contract = tb.merchant().create_contract(amount, "goods");
    return sim::sign_deposit(c, contract, amount, group(), rng);
  }

  Amount reserves() { return *tb.mint().bank_balance("bank-0"); }

  wallet::RefreshBuild build(const wallet::Coin& c, Amount spent,
                             Amount target, int kappa = 3,
                             std::optional<int> corrupt = std::nullopt) {
    const auto& t = tb.denom(target);
    Amount residual = c.face_value - spent - t.value - t.refresh_fee;
    return wallet::build_refresh(c, residual, t, kappa, group(), rng, corrupt);
  }

  Testbed tb;
  Drbg rng;
};

TEST_F(MintTest, SetupPublishesDistinctDenominations) {
  Drbg key_rng(1);
  auto two = mint::DenominationRegistry::setup(
      sim::make_schedule({Amount(100), Amount(500)}, kStart),
      crypto::crypto_profile(crypto::CryptoMode::kToy), key_rng);
  ASSERT_TRUE(two.ok());
  EXPECT_EQ(two->size(), 2u);
  EXPECT_NE(two->keys()[0].info.id, two->keys()[1].info.id);
  EXPECT_EQ(two->by_value(Amount(500)).size(), 1u);
  EXPECT_EQ(two->find(Hash256{}).error().code, ErrorCode::kNotFound);
  EXPECT_EQ(two->info(two->keys()[0]).pub, two->keys()[0].info.pub);

  auto empty = mint::DenominationRegistry::setup(
      {}, crypto::crypto_profile(crypto::CryptoMode::kToy), key_rng);
  EXPECT_EQ(empty.error().code, ErrorCode::kConfigError);
  auto bad = sim::make_schedule({Amount(100)}, kStart);
  bad[0].withdraw_end = bad[0].withdraw_start;
  EXPECT_EQ(mint::validate_schedule(bad).code(), ErrorCode::kConfigError);
  bad = sim::make_schedule({Amount(0)}, kStart);
  EXPECT_EQ(mint::validate_schedule(bad).code(), ErrorCode::kConfigError);
}

TEST_F(MintTest, PublishedDocumentExcludesPrivateKeys) {
  std::string doc = tb.mint().registry().published_document();
  const auto& k = tb.mint().registry().keys()[0];
  EXPECT_NE(doc.find(crypto::to_hex_string(k.info.pub.n)), std::string::npos);
  EXPECT_EQ(doc.find(crypto::to_hex_string(k.priv.d)), std::string::npos);
  Hash256 v = tb.mint().registry().version();
  ASSERT_TRUE(tb.mint().revoke_denomination(k.info.id).ok());
  EXPECT_NE(tb.mint().registry().version(), v);
}

TEST(MintWithdraw, DebitsReservesOnceAndReplays) {
  auto config = small_config();
  config.bank_reserves = Amount(10'000);
  Testbed tb(config);
  auto c = tb.wallet().withdraw_denomination(tb.denom(Amount(100)));
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(*tb.mint().bank_balance("bank-0"), Amount(9'900));
  wire::WithdrawReq req = tb.gateway().forwarded().back();
  auto first = tb.mint().issuance_record(req.f_blinded);
  ASSERT_TRUE(first.has_value());
  auto again = tb.mint().withdraw(req);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->s_blinded, first->s_blinded);
  EXPECT_EQ(*tb.mint().bank_balance("bank-0"), Amount(9'900));
}

TEST(MintWithdraw, RejectsBadRequests) {
  auto config = small_config();
  config.bank_reserves = Amount(150);
  Testbed tb(config);
  ASSERT_TRUE(tb.wallet().withdraw_denomination(tb.denom(Amount(100))).ok());
  wire::WithdrawReq req = tb.gateway().forwarded().back();

  auto short_funds = tb.wallet().withdraw_denomination(tb.denom(Amount(100)));
  ASSERT_FALSE(short_funds.ok());
  EXPECT_EQ(short_funds.error().root(), ErrorCode::kInsufficientReserves);

  wire::WithdrawReq unknown = req;
  unknown.bank_id = "bank-9";
  EXPECT_EQ(tb.mint().withdraw(unknown).error().code, ErrorCode::kUnknownBank);
  wire::WithdrawReq forged = req;
  forged.f_blinded.back() ^= 1;
  EXPECT_EQ(tb.mint().withdraw(forged).error().code,
            ErrorCode::kBadCountersignature);

  tb.clock.set(kStart + 366 * 86400);
  auto late = tb.mint().withdraw(req);
  EXPECT_EQ(late.error().code, ErrorCode::kDenominationExpired);
}

TEST_F(MintTest, DepositIdempotentAndDoubleSpend) {
  wallet::Coin c = coin(Amount(100));
  Amount before = reserves();
  wire::DepositReq d = deposit_req(c, Amount(100));
  ASSERT_TRUE(tb.mint().deposit(d).ok());
  auto replay = tb.mint().deposit(d);
  ASSERT_TRUE(replay.ok());
  EXPECT_EQ(reserves(), before + Amount(100));
  EXPECT_EQ(tb.mint().spent_record(c.pub)->entries.size(), 1u);

  auto other = tb.mint().deposit(deposit_req(c, Amount(100)));
  EXPECT_EQ(other.error().code, ErrorCode::kDoubleSpend);
  EXPECT_EQ(reserves(), before + Amount(100));
}

TEST_F(MintTest, PartialDepositsRespectResidual) {
  wallet::Coin c = coin(Amount(1000));
  EXPECT_TRUE(tb.mint().deposit(deposit_req(c, Amount(600))).ok());
  EXPECT_EQ(tb.mint().deposit(deposit_req(c, Amount(500))).error().code,
            ErrorCode::kDoubleSpend);
  auto last = tb.mint().deposit(deposit_req(c, Amount(400)));
  ASSERT_TRUE(last.ok());
  EXPECT_EQ(last->spent_total, Amount(1000));
  EXPECT_EQ(tb.mint().spent_record(c.pub)->spent_total, Amount(1000));
}

TEST_F(MintTest, DepositRejectsForgeries) {
  wallet::Coin c = coin(Amount(100));
  wire::DepositReq d = deposit_req(c, Amount(100));

  wire::DepositReq bad_sig = d;
  bad_sig.denom_sig.back() ^= 1;
  EXPECT_EQ(tb.mint().deposit(bad_sig).error().code,
            ErrorCode::kBadDenomSignature);
  wire::DepositReq bad_coin = d;
  bad_coin.amount = Amount(50);
  EXPECT_EQ(tb.mint().deposit(bad_coin).error().code,
            ErrorCode::kBadCoinSignature);
  wire::DepositReq unknown = d;
  unknown.denom_id = Hash256{};
  EXPECT_EQ(tb.mint().deposit(unknown).error().code,
            ErrorCode::kUnknownDenomination);
  wire::DepositReq over = deposit_req(c, Amount(101));
  EXPECT_NE(tb.mint().deposit(over).error().code, ErrorCode::kOk);

  tb.clock.set(kStart + 731 * 86400);
  EXPECT_EQ(tb.mint().deposit(d).error().code, ErrorCode::kDenominationExpired);
}

TEST_F(MintTest, DepositTouchesOneShard) {
  for (int i = 0; i < 20; ++i) {
    wallet::Coin c = coin(Amount(100));
    store::ShardTouchLog log;
    ASSERT_TRUE(tb.mint().deposit(deposit_req(c, Amount(100))).ok());
    EXPECT_EQ(log.distinct(), 1u);
    EXPECT_EQ(log.touched().front(),
              tb.mint().spent_store().map().shard_for(c.pub));
  }
}

TEST_F(MintTest, RefreshCommitReservesResidual) {
  wallet::Coin c = coin(Amount(1000));
  ASSERT_TRUE(tb.mint().deposit(deposit_req(c, Amount(600))).ok());

  wallet::RefreshBuild too_big = build(c, Amount(600), Amount(500));
  EXPECT_EQ(tb.mint().refresh_commit(too_big.request).error().code,
            ErrorCode::kDoubleSpend);

  wallet::RefreshBuild b = build(c, Amount(600), Amount(400));
  auto ch = tb.mint().refresh_commit(b.request);
  ASSERT_TRUE(ch.ok());
  EXPECT_GE(ch->gamma, 1);
  EXPECT_LE(ch->gamma, 3);
  EXPECT_EQ(tb.mint().spent_record(c.pub)->spent_total, Amount(1000));
  auto replay = tb.mint().refresh_commit(b.request);
  ASSERT_TRUE(replay.ok());
  EXPECT_EQ(*replay, *ch);

  wire::RefreshCommitReq tampered = b.request;
  tampered.commitments.pop_back();
  EXPECT_NE(tb.mint().refresh_commit(tampered).error().code, ErrorCode::kOk);
}

TEST_F(MintTest, RefreshCommitChecksCoinSignature) {
  wallet::Coin c = coin(Amount(1000));
  wallet::RefreshBuild b = build(c, Amount(0), Amount(100));
  b.request.coin_sig.back() ^= 1;
  EXPECT_EQ(tb.mint().refresh_commit(b.request).error().code,
            ErrorCode::kBadCoinSignature);
  wallet::RefreshBuild wrong_claim = build(c, Amount(100), Amount(100));
  EXPECT_EQ(tb.mint().refresh_commit(wrong_claim.request).error().code,
            ErrorCode::kResidualMismatch);
}

TEST_F(MintTest, GammaIsUniform) {
  std::map<int, int> counts;
  const int kSessions = 3000;
  while (counts[1] + counts[2] + counts[3] < kSessions) {
    wallet::Coin c = coin(Amount(1000));
    for (int i = 0; i < 10; ++i) {
      wallet::RefreshBuild b = build(c, Amount(100 * i), Amount(100));
      auto ch = tb.mint().refresh_commit(b.request);
      ASSERT_TRUE(ch.ok()) << ch.error().to_string();
      counts[ch->gamma]++;
    }
  }
  for (int g = 1; g <= 3; ++g) {
    double p = counts[g] / static_cast<double>(kSessions);
    EXPECT_NEAR(p, 1.0 / 3, 0.05) << g;
  }
}

TEST_F(MintTest, HonestRevealSucceedsForEveryGamma) {
  std::set<int> seen;
  for (int round = 0; round < 5 && seen.size() < 3; ++round) {
    wallet::Coin c = coin(Amount(1000));
    for (int i = 0; i < 10; ++i) {
      wallet::RefreshBuild b = build(c, Amount(100 * i), Amount(100));
      auto ch = tb.mint().refresh_commit(b.request);
      ASSERT_TRUE(ch.ok());
      auto resp = tb.mint().refresh_reveal(wallet::build_reveal(b, *ch, group()));
      ASSERT_TRUE(resp.ok()) << "gamma " << int(ch->gamma);
      auto change = wallet::finish_refresh(b, *ch, *resp, tb.denom(Amount(100)));
      ASSERT_TRUE(change.ok());
      EXPECT_TRUE(wallet::verify_coin(*change, tb.denom(Amount(100))));
      seen.insert(ch->gamma);
    }
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST_F(MintTest, WrongTransferKeyForfeits) {
  wallet::Coin c = coin(Amount(1000));
  wallet::RefreshBuild b = build(c, Amount(0), Amount(400));
  auto ch = tb.mint().refresh_commit(b.request);
  ASSERT_TRUE(ch.ok());
  wire::RefreshRevealReq reveal = wallet::build_reveal(b, *ch, group());
  crypto::BigInt t = crypto::from_bytes(reveal.reveals[0].transfer_priv);
  reveal.reveals[0].transfer_priv =
      crypto::encode_scalar(group(), crypto::mod(t + 1, group().q));
  EXPECT_EQ(tb.mint().refresh_reveal(reveal).error().code,
            ErrorCode::kForfeited);
  // The whole residual is gone and later reveals stay forfeited.
  EXPECT_EQ(tb.mint().spent_record(c.pub)->spent_total, Amount(1000));
  EXPECT_EQ(tb.mint().refresh_reveal(wallet::build_reveal(b, *ch, group()))
                .error()
                .code,
            ErrorCode::kForfeited);
  EXPECT_TRUE(tb.mint().link(c.pub).entries.empty());
  auto audit = tb.mint().audit_denomination(tb.denom(Amount(1000)).id);
  EXPECT_EQ(audit->forfeited_value, Amount(1000));
}

TEST_F(MintTest, RevealValidatesSession) {
  wallet::Coin c = coin(Amount(1000));
  wallet::RefreshBuild b = build(c, Amount(0), Amount(100));
  wire::RefreshChallenge fake{Hash256{}, 1};
  EXPECT_EQ(tb.mint().refresh_reveal(wallet::build_reveal(b, fake, group()))
                .error()
                .code,
            ErrorCode::kUnknownSession);
  auto ch = tb.mint().refresh_commit(b.request);
  ASSERT_TRUE(ch.ok());
  wire::RefreshRevealReq reveal = wallet::build_reveal(b, *ch, group());
  reveal.reveals.pop_back();
  EXPECT_EQ(tb.mint().refresh_reveal(reveal).error().code,
            ErrorCode::kInvalidRequest);
  auto ok = tb.mint().refresh_reveal(wallet::build_reveal(b, *ch, group()));
  ASSERT_TRUE(ok.ok());
  auto again = tb.mint().refresh_reveal(wallet::build_reveal(b, *ch, group()));
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(*again, *ok);
}

TEST_F(MintTest, LinkListsCompletedSessionsOnly) {
  wallet::Coin c = coin(Amount(1000));
  EXPECT_TRUE(tb.mint().link(c.pub).entries.empty());
  wallet::RefreshBuild b = build(c, Amount(0), Amount(400));
  auto ch = tb.mint().refresh_commit(b.request);
  auto resp = tb.mint().refresh_reveal(wallet::build_reveal(b, *ch, group()));
  ASSERT_TRUE(resp.ok());
  wire::LinkResp link = tb.mint().link(c.pub);
  ASSERT_EQ(link.entries.size(), 1u);
  EXPECT_EQ(link.entries[0].s_blinded, resp->s_blinded);
  EXPECT_EQ(link.entries[0].target_denom_id, tb.denom(Amount(400)).id);
  auto derived = wallet::derive_change(c, link.entries[0],
                                       tb.denom(Amount(400)), group());
  ASSERT_TRUE(derived.ok());
  EXPECT_TRUE(wallet::verify_coin(*derived, tb.denom(Amount(400))));

  // Committed but unrevealed sessions are not linkable either.
  wallet::RefreshBuild pending = build(c, Amount(400), Amount(200));
  ASSERT_TRUE(tb.mint().refresh_commit(pending.request).ok());
  EXPECT_EQ(tb.mint().link(c.pub).entries.size(), 1u);
}

TEST_F(MintTest, RevocationBlocksWithdrawAndDeposit) {
  wallet::Coin c = coin(Amount(100));
  const Hash256 id = tb.denom(Amount(100)).id;
  ASSERT_TRUE(tb.mint().revoke_denomination(id).ok());
  ASSERT_TRUE(tb.mint().revoke_denomination(id).ok());
  EXPECT_EQ(tb.mint().revoke_denomination(Hash256{}).error().code,
            ErrorCode::kUnknownDenomination);
  auto w = tb.wallet().withdraw_denomination(tb.denom(Amount(100)));
  EXPECT_EQ(w.error().root(), ErrorCode::kDenominationRevoked);
  EXPECT_EQ(tb.mint().deposit(deposit_req(c, Amount(100))).error().code,
            ErrorCode::kDenominationRevoked);
  ASSERT_TRUE(tb.deployment->sync_registry().ok());
  EXPECT_TRUE(tb.deployment->registry().find(id)->revoked);
}

wire::RefundReq refund_req(const wallet::Coin& c) {
  return {c.pub, c.denom_id, c.denom_sig, c.blinding, "bank-0"};
}

TEST_F(MintTest, RefundsUnspentResidual) {
  wallet::Coin whole = coin(Amount(100));
  wallet::Coin big = coin(Amount(1000));
  wallet::Coin spent = coin(Amount(100));
  ASSERT_TRUE(tb.mint().deposit(deposit_req(big, Amount(600))).ok());
  ASSERT_TRUE(tb.mint().deposit(deposit_req(spent, Amount(100))).ok());
  EXPECT_EQ(tb.mint().refund_revoked(refund_req(whole)).error().code,
            ErrorCode::kNotRevoked);
  ASSERT_TRUE(tb.mint().revoke_denomination(whole.denom_id).ok());
  ASSERT_TRUE(tb.mint().revoke_denomination(big.denom_id).ok());

  Amount before = reserves();
  auto r1 = tb.mint().refund_revoked(refund_req(whole));
  ASSERT_TRUE(r1.ok());
  EXPECT_EQ(r1->refunded, Amount(100));
  auto r2 = tb.mint().refund_revoked(refund_req(big));
  ASSERT_TRUE(r2.ok());
  EXPECT_EQ(r2->refunded, Amount(400));
  EXPECT_EQ(reserves(), before + Amount(500));
  EXPECT_EQ(tb.mint().spent_record(big.pub)->spent_total, Amount(1000));

  auto replay = tb.mint().refund_revoked(refund_req(whole));
  ASSERT_TRUE(replay.ok());
  EXPECT_EQ(replay->refunded, Amount(100));
  EXPECT_EQ(reserves(), before + Amount(500));

  EXPECT_EQ(tb.mint().refund_revoked(refund_req(spent)).error().code,
            ErrorCode::kAlreadyRefunded);

  wallet::Coin other = coin(Amount(200));
  ASSERT_TRUE(tb.mint().revoke_denomination(other.denom_id).ok());
  wire::RefundReq lost = refund_req(other);
  lost.blinding = crypto::to_fixed_bytes(
      crypto::sample_blinding(tb.denom(Amount(200)).pub.n, rng).b,
      tb.denom(Amount(200)).pub.width());
  EXPECT_EQ(tb.mint().refund_revoked(lost).error().code,
            ErrorCode::kNoMatchingWithdrawal);
  wire::RefundReq forged = refund_req(other);
  forged.denom_sig.back() ^= 1;
  EXPECT_EQ(tb.mint().refund_revoked(forged).error().code,
            ErrorCode::kBadSignature);
}

TEST_F(MintTest, AuditCounts) {
  const Hash256 id = tb.denom(Amount(100)).id;
  auto fresh = tb.mint().audit_denomination(id);
  ASSERT_TRUE(fresh.ok());
  EXPECT_EQ(fresh->issued_count, 0u);
  EXPECT_EQ(fresh->issued_value, Amount(0));
  EXPECT_EQ(fresh->deposited_value, Amount(0));
  EXPECT_FALSE(fresh->violation);

  std::vector<wallet::Coin> coins;
  for (int i = 0; i < 3; ++i) coins.push_back(coin(Amount(100)));
  for (int i = 0; i < 2; ++i) {
    ASSERT_TRUE(tb.mint().deposit(deposit_req(coins[i], Amount(100))).ok());
  }
  auto audit = tb.mint().audit_denomination(id);
  EXPECT_EQ(audit->issued_count, 3u);
  EXPECT_EQ(audit->issued_value, Amount(300));
  EXPECT_EQ(audit->deposited_value, Amount(200));
  EXPECT_FALSE(audit->violation);
}

TEST_F(MintTest, AuditFlagsStolenKeyForgery) {
  coin(Amount(100));
  auto forged = sim::stolen_key_forgery(*tb.deployment, tb.denom(Amount(100)).id,
                                        0, rng);
  EXPECT_GT(forged.accepted, 0);
  auto audit = tb.mint().audit_denomination(tb.denom(Amount(100)).id);
  EXPECT_TRUE(audit->violation);
  EXPECT_GT(audit->deposited_value, audit->issued_value);
}

TEST_F(MintTest, GcDropsRecordsPastLegalEnd) {
  wallet::Coin c = coin(Amount(100));
  ASSERT_TRUE(tb.mint().deposit(deposit_req(c, Amount(100))).ok());
  EXPECT_EQ(tb.mint().gc(kStart + 1000 * 86400), 0u);
  EXPECT_EQ(tb.mint().gc(kStart + 1096 * 86400), 1u);
  EXPECT_FALSE(tb.mint().spent_record(c.pub).has_value());
}

TEST(MintRestart, FileStoreKeepsSpentCoinsAndSessions) {
  auto dir = std::filesystem::temp_directory_path() /
             ("cbdc-mint-restart-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto config = small_config();
  config.store_dir = dir.string();
  Drbg rng(5);

  wallet::Coin spent_coin, refresh_coin;
  wallet::RefreshBuild b;
  wire::RefreshChallenge ch;
  wire::DepositReq dep;
  {
    Testbed tb(config);
    const auto& group = tb.mint().registry().group();
    spent_coin = *tb.wallet().withdraw_denomination(tb.denom(Amount(100)));
    refresh_coin = *tb.wallet().withdraw_denomination(tb.denom(Amount(1000)));
    auto contract = tb.merchant().create_contract(Amount(100), "x");
    dep = sim::sign_deposit(spent_coin, contract, Amount(100), group, rng);
    ASSERT_TRUE(tb.mint().deposit(dep).ok());
    b = wallet::build_refresh(refresh_coin, Amount(600), tb.denom(Amount(400)),
                              3, group, rng);
    auto r = tb.mint().refresh_commit(b.request);
    ASSERT_TRUE(r.ok());
    ch = *r;
  }
  Testbed tb(config);
  const auto& group = tb.mint().registry().group();
  auto contract = tb.merchant().create_contract(Amount(100), "y");
  EXPECT_EQ(tb.mint()
                .deposit(sim::sign_deposit(spent_coin, contract, Amount(100),
                                           group, rng))
                .error()
                .code,
            ErrorCode::kDoubleSpend);
  EXPECT_TRUE(tb.mint().deposit(dep).ok());
  auto again = tb.mint().refresh_commit(b.request);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->gamma, ch.gamma);
  auto resp = tb.mint().refresh_reveal(wallet::build_reveal(b, ch, group));
  ASSERT_TRUE(resp.ok());
  EXPECT_TRUE(wallet::finish_refresh(b, ch, *resp, tb.denom(Amount(400))).ok());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace cbdc
