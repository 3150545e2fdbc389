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
#include <fstream>
#include <thread>

#include "cbdc/rng.h"
#include "cbdc/store/kv_store.h"
#include "cbdc/store/sharded_store.h"

namespace cbdc::store {
namespace {

std::string temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() /
           ("cbdc-store-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

TEST(ShardMap, SingleShard) {
  ShardMap m = ShardMap::uniform(1);
  Drbg rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(m.shard_for(rng.bytes(64)), 0u);
}

TEST(ShardMap, UniformOverFourShards) {
  ShardMap m = ShardMap::uniform(4);
  Drbg rng(2026);
  std::vector<int> counts(4);
  for (int i = 0; i < 10'000; ++i) counts[m.shard_for(rng.bytes(64))]++;
  for (int c : counts) {
    EXPECT_GE(c, 2300);
    EXPECT_LE(c, 2700);
  }
}

TEST(ShardMap, BoundsPartitionTheKeySpace) {
  ShardMap m = ShardMap::uniform(4);
  EXPECT_EQ(m.upper_bounds().back(), UINT64_MAX);
  EXPECT_EQ(m.route(0), 0u);
  EXPECT_EQ(m.route(UINT64_MAX), 3u);
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    EXPECT_EQ(m.route(m.upper_bounds()[i]), i);
    EXPECT_EQ(m.route(m.upper_bounds()[i] + 1), i + 1);
  }
  EXPECT_FALSE(ShardMap::from_bounds({}).ok());
  EXPECT_FALSE(ShardMap::from_bounds({5, 3, UINT64_MAX}).ok());
  EXPECT_FALSE(ShardMap::from_bounds({5, 9}).ok());
}

TEST(ShardMap, RouteStableAsStoreGrows) {
  ShardedStore s = ShardedStore::in_memory(4);
  Drbg rng(3);
  Bytes coin = rng.bytes(64);
  std::size_t before = s.map().shard_for(coin);
  for (int i = 0; i < 1000; ++i) {
    Bytes k = rng.bytes(64);
    s.shard_for(k).compare_and_set(k, 0, as_view("x"));
  }
  EXPECT_EQ(s.map().shard_for(coin), before);
  EXPECT_EQ(s.record_count(), 1000u);
}

TEST(KvStore, CompareAndSet) {
  InMemoryKvStore kv;
  Bytes k = to_bytes("coin");
  EXPECT_FALSE(kv.get(k).has_value());
  EXPECT_FALSE(kv.compare_and_set(k, 1, as_view("a")));
  EXPECT_TRUE(kv.compare_and_set(k, 0, as_view("a")));
  EXPECT_FALSE(kv.compare_and_set(k, 0, as_view("b")));
  EXPECT_EQ(kv.get(k)->version, 1u);
  EXPECT_TRUE(kv.compare_and_set(k, 1, as_view("bb")));
  EXPECT_EQ(kv.get(k)->value, to_bytes("bb"));
  EXPECT_EQ(kv.byte_size(), 6u);
  EXPECT_FALSE(kv.erase(k, 1));
  EXPECT_TRUE(kv.erase(k, 2));
  EXPECT_EQ(kv.record_count(), 0u);
  EXPECT_EQ(kv.byte_size(), 0u);
}

TEST(KvStore, ConcurrentIncrementsAreLinearizable) {
  InMemoryKvStore kv;
  Bytes k = to_bytes("counter");
  const int kThreads = 8, kPer = 500;
  std::vector<std::thread> ts;
  for (int t = 0; t < kThreads; ++t) {
    ts.emplace_back([&] {
      for (int i = 0; i < kPer; ++i) {
        for (;;) {
          auto cur = kv.get(k);
          std::uint64_t v = cur ? cur->version : 0;
          std::uint64_t n = cur ? std::stoull(std::string(cur->value.begin(),
                                                          cur->value.end()))
                                : 0;
          if (kv.compare_and_set(k, v, as_view(std::to_string(n + 1)))) break;
        }
      }
    });
  }
  for (auto& t : ts) t.join();
  auto final = kv.get(k);
  EXPECT_EQ(std::string(final->value.begin(), final->value.end()),
            std::to_string(kThreads * kPer));
  EXPECT_EQ(final->version, static_cast<std::uint64_t>(kThreads * kPer));
}

TEST(FileKvStore, ReopenRestoresState) {
  std::string dir = temp_dir("reopen");
  std::string path = dir + "/kv.log";
  {
    auto kv = FileKvStore::open(path);
    ASSERT_TRUE(kv.ok());
    (*kv)->compare_and_set(as_view("a"), 0, as_view("1"));
    (*kv)->compare_and_set(as_view("a"), 1, as_view("2"));
    (*kv)->compare_and_set(as_view("b"), 0, as_view("x"));
    (*kv)->erase(as_view("b"), 1);
  }
  {
    std::ofstream f(path, std::ios::app | std::ios::binary);
    f << "\x01\x00\x00";  // torn tail
  }
  auto kv = FileKvStore::open(path);
  ASSERT_TRUE(kv.ok());
  auto a = (*kv)->get(as_view("a"));
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->value, to_bytes("2"));
  EXPECT_EQ(a->version, 2u);
  EXPECT_FALSE((*kv)->get(as_view("b")).has_value());
  EXPECT_TRUE((*kv)->compare_and_set(as_view("a"), 2, as_view("3")));
  std::filesystem::remove_all(dir);
}

TEST(ShardedStore, OnDiskReopens) {
  std::string dir = temp_dir("sharded");
  Drbg rng(6);
  std::vector<Bytes> keys;
  {
    auto s = ShardedStore::on_disk(dir, 4);
    ASSERT_TRUE(s.ok());
    for (int i = 0; i < 200; ++i) {
      keys.push_back(rng.bytes(32));
      s->shard_for(keys.back()).compare_and_set(keys.back(), 0, as_view("v"));
    }
  }
  auto s = ShardedStore::on_disk(dir, 4);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->record_count(), 200u);
  for (const auto& k : keys) EXPECT_TRUE(s->shard_for(k).get(k).has_value());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace cbdc::store
