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

#include <benchmark/benchmark.h>

#include "cbdc/crypto/group.h"
#include "cbdc/crypto/params.h"
#include "cbdc/crypto/rsa.h"
#include "cbdc/rng.h"

namespace {

using namespace cbdc;
using crypto::CryptoMode;

struct RsaSetup {
  crypto::RsaKeyPair key;
  crypto::BigInt f_blinded;
  crypto::BigInt s_blinded;
  crypto::BlindingFactor b;
  crypto::BigInt f;
};

const RsaSetup& rsa_setup(CryptoMode mode) {
  static std::map<CryptoMode, RsaSetup> cache;
  auto it = cache.find(mode);
  if (it != cache.end()) return it->second;
  const auto& p = crypto::crypto_profile(mode);
  Drbg rng(42);
  RsaSetup s{*crypto::rsa_keygen(p.rsa_bits, p.rsa_e, rng), {}, {}, {}, {}};
  s.f = crypto::fdh(s.key.pub.n, as_view(std::string_view("bench coin")));
  s.b = crypto::sample_blinding(s.key.pub.n, rng);
  s.f_blinded = crypto::blind(s.f, s.b, s.key.pub);
  s.s_blinded = crypto::blind_sign(s.key.priv, s.f_blinded);
  return cache.emplace(mode, std::move(s)).first->second;
}

CryptoMode mode_arg(const benchmark::State& state) {
  return state.range(0) ? CryptoMode::kFull : CryptoMode::kToy;
}

void BM_BlindSign(benchmark::State& state) {
  const auto& s = rsa_setup(mode_arg(state));
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::blind_sign(s.key.priv, s.f_blinded));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BlindSign)->Arg(0)->Arg(1);

void BM_BlindSignPortable(benchmark::State& state) {
  const auto& s = rsa_setup(mode_arg(state));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        crypto::rsa_sign_portable(s.key.priv, s.f_blinded));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BlindSignPortable)->Arg(0)->Arg(1);

void BM_Blind(benchmark::State& state) {
  const auto& s = rsa_setup(mode_arg(state));
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::blind(s.f, s.b, s.key.pub));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Blind)->Arg(0)->Arg(1);

void BM_Unblind(benchmark::State& state) {
  const auto& s = rsa_setup(mode_arg(state));
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::unblind(s.s_blinded, s.b, s.key.pub.n));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Unblind)->Arg(0)->Arg(1);

void BM_RsaVerify(benchmark::State& state) {
  const auto& s = rsa_setup(mode_arg(state));
  auto sig = crypto::unblind(s.s_blinded, s.b, s.key.pub.n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::rsa_verify(s.key.pub, s.f, sig));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RsaVerify)->Arg(0)->Arg(1);

void BM_Fdh(benchmark::State& state) {
  const auto& s = rsa_setup(mode_arg(state));
  Bytes msg(256, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::fdh(s.key.pub.n, msg));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Fdh)->Arg(0)->Arg(1);

void BM_CoinSign(benchmark::State& state) {
  const auto& g = crypto::crypto_profile(mode_arg(state)).group;
  Drbg rng(7);
  auto kp = crypto::group_keygen(g, rng);
  Bytes msg(64, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::coin_sign(kp.priv, msg, g, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CoinSign)->Arg(0)->Arg(1);

void BM_CoinVerify(benchmark::State& state) {
  const auto& g = crypto::crypto_profile(mode_arg(state)).group;
  Drbg rng(7);
  auto kp = crypto::group_keygen(g, rng);
  Bytes msg(64, 1);
  Bytes sig = crypto::coin_sign(kp.priv, msg, g, rng).encode(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::coin_sig_verify(kp.pub, msg, sig, g));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CoinVerify)->Arg(0)->Arg(1);

void BM_TransferKx(benchmark::State& state) {
  const auto& g = crypto::crypto_profile(mode_arg(state)).group;
  Drbg rng(9);
  auto a = crypto::group_keygen(g, rng);
  auto b = crypto::group_keygen(g, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(crypto::kx(a.priv, b.pub, g));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TransferKx)->Arg(0)->Arg(1);

}  // namespace
