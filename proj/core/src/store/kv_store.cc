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

#include "cbdc/store/kv_store.h"

#include <filesystem>
#include <mutex>
#include <system_error>
#include <vector>

namespace cbdc::store {

namespace {

std::string key_string(ByteView key) {
  return std::string(reinterpret_cast<const char*>(key.data()), key.size());
}

}  // namespace

std::optional<Versioned> InMemoryKvStore::get(ByteView key) const {
  std::shared_lock lock(mu_);
  auto it = map_.find(key_string(key));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool InMemoryKvStore::compare_and_set(ByteView key,
                                      std::uint64_t expected_version,
                                      ByteView value) {
  std::unique_lock lock(mu_);
  std::string k = key_string(key);
  auto it = map_.find(k);
  std::uint64_t current = it == map_.end() ? 0 : it->second.version;
  if (current != expected_version) return false;
  on_commit(Op::kPut, key, expected_version + 1, value);
  apply_unlocked(Op::kPut, k, expected_version + 1,
                 Bytes(value.begin(), value.end()));
  return true;
}

bool InMemoryKvStore::erase(ByteView key, std::uint64_t expected_version) {
  std::unique_lock lock(mu_);
  std::string k = key_string(key);
  auto it = map_.find(k);
  if (it == map_.end() || it->second.version != expected_version) return false;
  on_commit(Op::kErase, key, expected_version, {});
  apply_unlocked(Op::kErase, k, expected_version, {});
  return true;
}

void InMemoryKvStore::apply_unlocked(Op op, const std::string& key,
                                     std::uint64_t version, Bytes value) {
  auto it = map_.find(key);
  if (it != map_.end()) {
    bytes_ -= key.size() + it->second.value.size();
    if (op == Op::kErase) {
      map_.erase(it);
      return;
    }
    it->second = Versioned{std::move(value), version};
    bytes_ += key.size() + it->second.value.size();
    return;
  }
  if (op == Op::kErase) return;
  bytes_ += key.size() + value.size();
  map_.emplace(key, Versioned{std::move(value), version});
}

void InMemoryKvStore::for_each(
    const std::function<void(ByteView, const Versioned&)>& fn) const {
  std::shared_lock lock(mu_);
  for (const auto& [k, v] : map_) fn(as_view(k), v);
}

std::size_t InMemoryKvStore::record_count() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

std::size_t InMemoryKvStore::byte_size() const {
  std::shared_lock lock(mu_);
  return bytes_;
}

// Log record: op(1) | key_len(4) | key | version(8) | value_len(4) | value
Result<std::unique_ptr<FileKvStore>> FileKvStore::open(const std::string& path) {
  std::unique_ptr<FileKvStore> store(new FileKvStore(path));
  if (std::FILE* in = std::fopen(path.c_str(), "rb")) {
    std::vector<std::uint8_t> data;
    std::uint8_t buf[1 << 14];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, in)) > 0) {
      data.insert(data.end(), buf, buf + n);
    }
    std::fclose(in);
    std::size_t pos = 0;
    auto read_u32 = [&](std::uint32_t& v) {
      if (data.size() - pos < 4) return false;
      v = 0;
      for (int i = 0; i < 4; ++i) v = v << 8 | data[pos++];
      return true;
    };
    while (pos < data.size()) {
      std::size_t start = pos;
      std::uint8_t op = data[pos++];
      std::uint32_t klen = 0, vlen = 0;
      std::uint64_t version = 0;
      bool ok = (op == 1 || op == 2) && read_u32(klen) &&
                data.size() - pos >= klen;
      std::string key;
      if (ok) {
        key.assign(reinterpret_cast<const char*>(&data[pos]), klen);
        pos += klen;
        ok = data.size() - pos >= 8;
      }
      if (ok) {
        for (int i = 0; i < 8; ++i) version = version << 8 | data[pos++];
        ok = read_u32(vlen) && data.size() - pos >= vlen;
      }
      if (!ok) {
        // Torn tail from an interrupted append: truncate logically.
        pos = start;
        break;
      }
      Bytes value(data.begin() + pos, data.begin() + pos + vlen);
      pos += vlen;
      store->apply_unlocked(static_cast<Op>(op), key, version,
                            std::move(value));
    }
    if (pos != data.size()) {
      std::error_code ec;
      std::filesystem::resize_file(path, pos, ec);
      if (ec) return make_error(ErrorCode::kIoError, "cannot truncate " + path);
    }
  }
  store->log_ = std::fopen(path.c_str(), "ab");
  if (store->log_ == nullptr) {
    return make_error(ErrorCode::kIoError, "cannot open " + path);
  }
  return store;
}

FileKvStore::~FileKvStore() {
  if (log_ != nullptr) std::fclose(log_);
}

void FileKvStore::on_commit(Op op, ByteView key, std::uint64_t version,
                            ByteView value) {
  Bytes rec;
  rec.push_back(static_cast<std::uint8_t>(op));
  append_u32(rec, static_cast<std::uint32_t>(key.size()));
  append(rec, key);
  append_u64(rec, version);
  append_u32(rec, static_cast<std::uint32_t>(value.size()));
  append(rec, value);
  if (std::fwrite(rec.data(), 1, rec.size(), log_) != rec.size() ||
      std::fflush(log_) != 0) {
    throw std::runtime_error("FileKvStore: write failed for " + path_);
  }
}

}  // namespace cbdc::store
