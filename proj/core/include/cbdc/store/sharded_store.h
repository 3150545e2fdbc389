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

#ifndef CBDC_STORE_SHARDED_STORE_H_
#define CBDC_STORE_SHARDED_STORE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cbdc/bytes.h"
#include "cbdc/status.h"
#include "cbdc/store/kv_store.h"

namespace cbdc::store {

// Range partition of the 64-bit prefix of SHA-256(coin_pub). Shard i owns
// (upper_bounds[i-1], upper_bounds[i]].
class ShardMap {
 public:
  static ShardMap uniform(std::size_t shard_count);
  static Result<ShardMap> from_bounds(std::vector<std::uint64_t> upper_bounds);

  std::size_t shard_count() const { return upper_bounds_.size(); }
  const std::vector<std::uint64_t>& upper_bounds() const {
    return upper_bounds_;
  }

  static std::uint64_t route_key(ByteView coin_pub);
  std::size_t route(std::uint64_t key) const;
  std::size_t shard_for(ByteView coin_pub) const {
    return route(route_key(coin_pub));
  }

 private:
  explicit ShardMap(std::vector<std::uint64_t> b) : upper_bounds_(std::move(b)) {}
  std::vector<std::uint64_t> upper_bounds_;
};

// Records which shards the current thread touches while a ShardTouchLog
// is alive. Used to check that each coin operation stays in one shard.
class ShardTouchLog {
 public:
  ShardTouchLog();
  ~ShardTouchLog();
  ShardTouchLog(const ShardTouchLog&) = delete;
  ShardTouchLog& operator=(const ShardTouchLog&) = delete;

  const std::vector<std::size_t>& touched() const { return touched_; }
  std::size_t distinct() const;
  void clear() { touched_.clear(); }

  static void note(std::size_t shard);

 private:
  std::vector<std::size_t> touched_;
  ShardTouchLog* previous_;
};

class ShardedStore {
 public:
  ShardedStore(ShardMap map, std::vector<std::unique_ptr<KvStore>> shards);

  static ShardedStore in_memory(std::size_t shard_count);
  // One FileKvStore per shard at <dir>/shard-<i>.log.
  static Result<ShardedStore> on_disk(const std::string& dir,
                                      std::size_t shard_count);

  const ShardMap& map() const { return map_; }
  std::size_t shard_count() const { return shards_.size(); }

  KvStore& shard(std::size_t i) { return *shards_.at(i); }
  const KvStore& shard(std::size_t i) const { return *shards_.at(i); }
  KvStore& shard_for(ByteView coin_pub) {
    return shard(map_.shard_for(coin_pub));
  }

  std::size_t record_count() const;
  std::size_t byte_size() const;

 private:
  ShardMap map_;
  std::vector<std::unique_ptr<KvStore>> shards_;
};

}  // namespace cbdc::store

#endif  // CBDC_STORE_SHARDED_STORE_H_
