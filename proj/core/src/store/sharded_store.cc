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

#include "cbdc/store/sharded_store.h"

#include <algorithm>
#include <filesystem>
#include <limits>
#include <set>

namespace cbdc::store {

namespace {

thread_local ShardTouchLog* current_log = nullptr;

// Forwards to an inner store and reports the shard index on every access.
class TouchingKvStore final : public KvStore {
 public:
  TouchingKvStore(std::size_t index, std::unique_ptr<KvStore> inner)
      : index_(index), inner_(std::move(inner)) {}

  std::optional<Versioned> get(ByteView key) const override {
    ShardTouchLog::note(index_);
    return inner_->get(key);
  }
  bool compare_and_set(ByteView key, std::uint64_t expected,
                       ByteView value) override {
    ShardTouchLog::note(index_);
    return inner_->compare_and_set(key, expected, value);
  }
  bool erase(ByteView key, std::uint64_t expected) override {
    ShardTouchLog::note(index_);
    return inner_->erase(key, expected);
  }
  void for_each(const std::function<void(ByteView, const Versioned&)>& fn)
      const override {
    inner_->for_each(fn);
  }
  std::size_t record_count() const override { return inner_->record_count(); }
  std::size_t byte_size() const override { return inner_->byte_size(); }

 private:
  std::size_t index_;
  std::unique_ptr<KvStore> inner_;
};

}  // namespace

ShardMap ShardMap::uniform(std::size_t shard_count) {
  CBDC_EXPECTS(shard_count >= 1, "need at least one shard");
  std::vector<std::uint64_t> bounds;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t step = max / shard_count;
  for (std::size_t i = 1; i < shard_count; ++i) bounds.push_back(step * i);
  bounds.push_back(max);
  return ShardMap(std::move(bounds));
}

Result<ShardMap> ShardMap::from_bounds(std::vector<std::uint64_t> bounds) {
  if (bounds.empty() ||
      bounds.back() != std::numeric_limits<std::uint64_t>::max() ||
      std::adjacent_find(bounds.begin(), bounds.end(),
                         std::greater_equal<>()) != bounds.end()) {
    return make_error(ErrorCode::kConfigError,
                      "shard bounds must increase strictly and end at 2^64-1");
  }
  return ShardMap(std::move(bounds));
}

std::uint64_t ShardMap::route_key(ByteView coin_pub) {
  return hash_prefix_u64(sha256(coin_pub));
}

std::size_t ShardMap::route(std::uint64_t key) const {
  auto it = std::lower_bound(upper_bounds_.begin(), upper_bounds_.end(), key);
  return static_cast<std::size_t>(it - upper_bounds_.begin());
}

ShardTouchLog::ShardTouchLog() : previous_(current_log) { current_log = this; }

ShardTouchLog::~ShardTouchLog() { current_log = previous_; }

std::size_t ShardTouchLog::distinct() const {
  return std::set<std::size_t>(touched_.begin(), touched_.end()).size();
}

void ShardTouchLog::note(std::size_t shard) {
  if (current_log != nullptr) current_log->touched_.push_back(shard);
}

ShardedStore::ShardedStore(ShardMap map,
                           std::vector<std::unique_ptr<KvStore>> shards)
    : map_(std::move(map)) {
  CBDC_EXPECTS(map_.shard_count() == shards.size(),
               "shard map and shard list disagree");
  for (std::size_t i = 0; i < shards.size(); ++i) {
    shards_.push_back(
        std::make_unique<TouchingKvStore>(i, std::move(shards[i])));
  }
}

ShardedStore ShardedStore::in_memory(std::size_t shard_count) {
  std::vector<std::unique_ptr<KvStore>> shards;
  for (std::size_t i = 0; i < shard_count; ++i) {
    shards.push_back(std::make_unique<InMemoryKvStore>());
  }
  return ShardedStore(ShardMap::uniform(shard_count), std::move(shards));
}

Result<ShardedStore> ShardedStore::on_disk(const std::string& dir,
                                           std::size_t shard_count) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return make_error(ErrorCode::kIoError, "cannot create " + dir);
  std::vector<std::unique_ptr<KvStore>> shards;
  for (std::size_t i = 0; i < shard_count; ++i) {
    auto s = FileKvStore::open(dir + "/shard-" + std::to_string(i) + ".log");
    if (!s.ok()) return s.error();
    shards.push_back(std::move(s).value());
  }
  return ShardedStore(ShardMap::uniform(shard_count), std::move(shards));
}

std::size_t ShardedStore::record_count() const {
  std::size_t n = 0;
  for (const auto& s : shards_) n += s->record_count();
  return n;
}

std::size_t ShardedStore::byte_size() const {
  std::size_t n = 0;
  for (const auto& s : shards_) n += s->byte_size();
  return n;
}

}  // namespace cbdc::store
