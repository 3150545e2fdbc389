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

#include <map>
#include <set>

#include "cbdc/crypto/group.h"
#include "cbdc/crypto/params.h"
#include "cbdc/crypto/rsa.h"

namespace cbdc::crypto {
namespace {

RsaKeyPair key55() {
  auto k = rsa_key_from_primes(5, 11, 3);
  if (!k.ok()) throw std::runtime_error("key55");
  return *k;
}

TEST(Rsa, KeyFromSmallPrimes) {
  RsaKeyPair k = key55();
  EXPECT_EQ(k.pub.n, 55);
  EXPECT_EQ(k.priv.d, 27);
  EXPECT_EQ((k.priv.d * 3) % 40, 1);
}

TEST(Rsa, RejectsExponentSharingFactorWithPhi) {
  auto k = rsa_key_from_primes(5, 11, 5);
  ASSERT_FALSE(k.ok());
  EXPECT_EQ(k.error().code, ErrorCode::kKeygenFailed);
}

TEST(Rsa, KeygenResamplesUntilExponentIsUnit) {
  std::vector<BigInt> primes = {5, 11, 5, 11, 5, 7};
  std::size_t next = 0;
  auto k = rsa_keygen(6, 5, [&](std::size_t) { return primes[next++]; });
  ASSERT_TRUE(k.ok());
  EXPECT_EQ(k->pub.n, 35);
  EXPECT_EQ(next, 6u);

  auto stuck = rsa_keygen(6, 5, [](std::size_t bits) {
    return bits == 3 ? BigInt(5) : BigInt(11);
  }, 4);
  EXPECT_FALSE(stuck.ok());
}

TEST(Rsa, KeygenProducesWorkingKeys) {
  Drbg rng(11);
  auto k = rsa_keygen(512, 3, rng);
  ASSERT_TRUE(k.ok());
  EXPECT_EQ(bit_length(k->priv.p), 256u);
  EXPECT_EQ(bit_length(k->priv.q), 256u);
  BigInt phi = (k->priv.p - 1) * (k->priv.q - 1);
  EXPECT_EQ(mod(k->priv.d * 3, phi), 1);
  for (int i = 0; i < 100; ++i) {
    BigInt m = random_below(k->pub.n, rng);
    EXPECT_TRUE(rsa_verify(k->pub, m, rsa_sign(k->priv, m)));
  }
}

TEST(Rsa, SignAndVerifySmall) {
  RsaKeyPair k = key55();
  EXPECT_EQ(rsa_sign(k.priv, 2), 18);
  EXPECT_EQ(rsa_sign(k.priv, 0), 0);
  EXPECT_EQ(rsa_sign(k.priv, 1), 1);
  EXPECT_TRUE(rsa_verify(k.pub, 2, 18));
  EXPECT_FALSE(rsa_verify(k.pub, 2, 19));
  EXPECT_FALSE(rsa_verify(k.pub, 3, 18));
}

TEST(Rsa, ExactlyOneSignatureVerifiesPerMessage) {
  RsaKeyPair k = key55();
  for (int f = 0; f < 55; ++f) {
    int hits = 0;
    for (int s = 0; s < 55; ++s) hits += rsa_verify(k.pub, f, s) ? 1 : 0;
    EXPECT_EQ(hits, 1) << f;
  }
}

TEST(Rsa, AcceleratedAndPortableAgree) {
  Drbg rng(5);
  auto k = rsa_keygen(2048, 65537, rng);
  ASSERT_TRUE(k.ok());
  for (int i = 0; i < 5; ++i) {
    BigInt m = random_below(k->pub.n, rng);
    BigInt s = rsa_sign(k->priv, m);
    EXPECT_EQ(s, rsa_sign_portable(k->priv, m));
    EXPECT_TRUE(rsa_verify(k->pub, m, s));
  }
}

TEST(Blinding, WorkedVector) {
  RsaKeyPair k = key55();
  BlindingFactor b{7};
  BigInt f1 = blind(2, b, k.pub);
  EXPECT_EQ(f1, 26);
  BigInt s1 = blind_sign(k.priv, f1);
  EXPECT_EQ(s1, 16);
  EXPECT_EQ(invert(7, 55), 8);
  EXPECT_EQ(unblind(s1, b, 55), 18);
  EXPECT_EQ(blind(0, b, k.pub), 0);
  EXPECT_EQ(blind(9, BlindingFactor{1}, k.pub), 9);
  EXPECT_EQ(blind_sign(k.priv, 1), 1);
  EXPECT_EQ(unblind(16, BlindingFactor{1}, 55), 16);
}

TEST(Blinding, SamplesAreUniformUnits) {
  Drbg rng(2026);
  std::map<int, int> counts;
  const int kSamples = 10'000;
  for (int i = 0; i < kSamples; ++i) {
    BigInt b = sample_blinding(55, rng).b;
    ASSERT_TRUE(is_valid_blinding(b, 55));
    ASSERT_EQ(gcd(b, 55), 1);
    counts[static_cast<int>(b.get_si())]++;
  }
  EXPECT_EQ(counts.size(), 40u);
  for (int bad : {0, 5, 11, 22}) EXPECT_EQ(counts.count(bad), 0u);
  double expected = kSamples / 40.0;
  double chi2 = 0;
  for (const auto& [v, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 39 degrees of freedom; 0.999 quantile is about 72.1.
  EXPECT_LT(chi2, 72.1);
}

TEST(Blinding, ValidityRejectsNonUnits) {
  EXPECT_FALSE(is_valid_blinding(0, 55));
  EXPECT_FALSE(is_valid_blinding(11, 55));
  EXPECT_FALSE(is_valid_blinding(55, 55));
  EXPECT_TRUE(is_valid_blinding(7, 55));
}

TEST(Fdh, SmallModulusVectors) {
  EXPECT_EQ(fdh(55, as_view("coin-A")), 17);
  EXPECT_EQ(fdh(55, as_view("coin-B")), 19);
  EXPECT_EQ(fdh(55, as_view("")), 8);
  EXPECT_EQ(fdh(3233, as_view("cbdc")), 1624);
}

TEST(Fdh, LargeModulusVector) {
  BigInt n = (BigInt(1) << 2047) + 12345;
  BigInt f = fdh(n, as_view("coin-A"));
  EXPECT_EQ(bit_length(f), 2044u);
  EXPECT_EQ(to_hex(sha256(to_fixed_bytes(f, 256))),
            "0b83bb33416359aa8b96c329895b2ff5f719c26c6fe119d0fdd7ccee7ea7388b");
}

TEST(Fdh, DeterministicUnitsAndBitSensitive) {
  Drbg rng(3);
  auto k = rsa_keygen(512, 3, rng);
  ASSERT_TRUE(k.ok());
  for (int i = 0; i < 1000; ++i) {
    Bytes msg = rng.bytes(32);
    BigInt f = fdh(k->pub.n, msg);
    ASSERT_EQ(f, fdh(k->pub.n, msg));
    ASSERT_GE(f, 1);
    ASSERT_LT(f, k->pub.n);
    ASSERT_EQ(gcd(f, k->pub.n), 1);
    Bytes flipped = msg;
    flipped[rng.uniform(32)] ^= static_cast<std::uint8_t>(1u << rng.uniform(8));
    ASSERT_NE(f, fdh(k->pub.n, flipped));
  }
}

TEST(Group, TinyGroupKeys) {
  GroupParams g = tiny_group();
  EXPECT_EQ(g.p, 23);
  EXPECT_EQ(g.q, 11);
  EXPECT_EQ(g.g, 2);
  EXPECT_TRUE(g.validate(true).ok());
  EXPECT_EQ(group_public(g, 3), 8);
  EXPECT_EQ(group_public(g, 1), 2);
  Drbg rng(1);
  for (int i = 0; i < 200; ++i) {
    GroupKeyPair kp = group_keygen(g, rng);
    ASSERT_GE(kp.priv, 1);
    ASSERT_LT(kp.priv, 11);
    ASSERT_EQ(powm(kp.pub, g.q, g.p), 1);
  }
}

TEST(Group, ProductionGroupsValidate) {
  EXPECT_TRUE(group_512_160().validate(true).ok());
  EXPECT_TRUE(group_2048_256().validate(true).ok());
  EXPECT_EQ(bit_length(group_2048_256().p), 2048u);
  EXPECT_EQ(bit_length(group_2048_256().q), 256u);
}

TEST(Group, FullGroupDiffieHellmanVector) {
  // Generator 5 of all of Z_23^*, so the exponent order is 22.
  GroupParams full{23, 22, 5};
  EXPECT_EQ(group_public(full, 6), 8);
  EXPECT_EQ(group_public(full, 15), 19);
  auto ka = kx(6, 19, full);
  auto kb = kx(15, 8, full);
  ASSERT_TRUE(ka.ok());
  ASSERT_TRUE(kb.ok());
  EXPECT_EQ(*ka, *kb);
  EXPECT_EQ(ka->k, Bytes{0x02});
}

TEST(Group, KxSymmetryExhaustive) {
  GroupParams g = tiny_group();
  for (int x = 1; x < 11; ++x) {
    for (int y = 1; y < 11; ++y) {
      auto a = kx(x, group_public(g, y), g);
      auto b = kx(y, group_public(g, x), g);
      ASSERT_TRUE(a.ok() && b.ok());
      ASSERT_EQ(*a, *b);
      ASSERT_EQ(a->k, encode_element(g, powm(g.g, BigInt(x * y), g.p)));
    }
  }
}

TEST(Group, KxRejectsOutsideSubgroup) {
  GroupParams g = tiny_group();
  for (int bad : {0, 1, 5, 22, 23}) {
    auto r = kx(3, bad, g);
    ASSERT_FALSE(r.ok()) << bad;
    EXPECT_EQ(r.error().code, ErrorCode::kInvalidPoint);
  }
  EXPECT_FALSE(is_subgroup_element(g, 1));
  EXPECT_TRUE(is_subgroup_element(g, 8));
}

TEST(CoinSignature, RoundTripAndTamper) {
  GroupParams g = tiny_group();
  Drbg rng(9);
  CoinSignature sig = coin_sign(3, as_view("pay"), g, rng);
  BigInt pub = group_public(g, 3);
  EXPECT_TRUE(coin_sig_verify(pub, as_view("pay"), sig, g));

  // Only ten challenges exist at q = 11, so a tampered message still
  // verifies about one time in ten.
  int forged = 0;
  for (int i = 0; i < 1000; ++i) {
    CoinSignature s = coin_sign(3, as_view("pay"), g, rng);
    ASSERT_TRUE(coin_sig_verify(pub, as_view("pay"), s, g));
    forged += coin_sig_verify(pub, as_view("pax"), s, g) ? 1 : 0;
  }
  EXPECT_LT(forged, 150);

  const GroupParams& toy = crypto_profile(CryptoMode::kToy).group;
  GroupKeyPair a = group_keygen(toy, rng);
  GroupKeyPair other = group_keygen(toy, rng);
  CoinSignature st = coin_sign(a.priv, as_view("pay"), toy, rng);
  EXPECT_TRUE(coin_sig_verify(a.pub, as_view("pay"), st, toy));
  EXPECT_FALSE(coin_sig_verify(a.pub, as_view("pax"), st, toy));
  EXPECT_FALSE(coin_sig_verify(other.pub, as_view("pay"), st, toy));
}

TEST(CoinSignature, BitFlipsRejectedAtFullSize) {
  const GroupParams& g = group_2048_256();
  Drbg rng(10);
  GroupKeyPair kp = group_keygen(g, rng);
  Bytes msg = to_bytes("contract 7 for 3.00");
  Bytes sig = coin_sign(kp.priv, msg, g, rng).encode(g);
  ASSERT_TRUE(coin_sig_verify(kp.pub, msg, sig, g));
  for (int i = 0; i < 16; ++i) {
    Bytes m = msg;
    m[rng.uniform(m.size())] ^= static_cast<std::uint8_t>(1u << rng.uniform(8));
    EXPECT_FALSE(coin_sig_verify(kp.pub, m, sig, g));
    Bytes s = sig;
    s[rng.uniform(s.size())] ^= static_cast<std::uint8_t>(1u << rng.uniform(8));
    EXPECT_FALSE(coin_sig_verify(kp.pub, msg, s, g));
  }
  EXPECT_FALSE(coin_sig_verify(kp.pub, msg, ByteView(sig).first(10), g));
}

TEST(DeriveRefresh, DeterministicValidAndDistinct) {
  const CryptoProfile& prof = crypto_profile(CryptoMode::kToy);
  Drbg rng(12);
  auto k = rsa_keygen(prof.rsa_bits, prof.rsa_e, rng);
  ASSERT_TRUE(k.ok());
  std::set<std::string> privs;
  for (int i = 0; i < 10'000; ++i) {
    TransferSecret s{rng.bytes(prof.group.element_width())};
    RefreshDerivation d = derive_refresh(s, k->pub, prof.group);
    if (i < 1000) {
      RefreshDerivation again = derive_refresh(s, k->pub, prof.group);
      ASSERT_EQ(d.blinding.b, again.blinding.b);
      ASSERT_EQ(d.coin_priv, again.coin_priv);
      ASSERT_EQ(gcd(d.blinding.b, k->pub.n), 1);
    }
    ASSERT_GE(d.coin_priv, 1);
    ASSERT_LT(d.coin_priv, prof.group.q);
    privs.insert(to_hex_string(d.coin_priv));
  }
  EXPECT_EQ(privs.size(), 10'000u);
}

}  // namespace
}  // namespace cbdc::crypto
