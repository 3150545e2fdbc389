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

#ifndef CBDC_STORE_KV_STORE_H_
#define CBDC_STORE_KV_STORE_H_

#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "cbdc/bytes.h"
#include "cbdc/status.h"

namespace cbdc::store {

struct Versioned {
  Bytes value;
  // Starts at 1 for a freshly inserted key; 0 means "absent" in CAS calls.
  std::uint64_t version = 0;
};

// Minimal key-value contract the mint needs from its database: point reads
// and per-key compare-and-set. Any backend offering these can hold the
// spent-coin list.
class KvStore {
 public:
  virtual ~KvStore() = default;

  virtual std::optional<Versioned> get(ByteView key) const = 0;
  // Writes `value` iff the current version equals `expected_version`
  // (0: key must be absent). The stored version becomes expected + 1.
  virtual bool compare_and_set(ByteView key, std::uint64_t expected_version,
                               ByteView value) = 0;
  virtual bool erase(ByteView key, std::uint64_t expected_version) = 0;
  virtual void for_each(
      const std::function<void(ByteView key, const Versioned&)>& fn) const = 0;

  virtual std::size_t record_count() const = 0;
  // Sum of key and value sizes.
  virtual std::size_t byte_size() const = 0;
};

class InMemoryKvStore : public KvStore {
 public:
  std::optional<Versioned> get(ByteView key) const override;
  bool compare_and_set(ByteView key, std::uint64_t expected_version,
                       ByteView value) override;
  bool erase(ByteView key, std::uint64_t expected_version) override;
  void for_each(const std::function<void(ByteView, const Versioned&)>& fn)
      const override;
  std::size_t record_count() const override;
  std::size_t byte_size() const override;

 protected:
  enum class Op : std::uint8_t { kPut = 1, kErase = 2 };
  // Called under the write lock after a successful mutation.
  virtual void on_commit(Op, ByteView, std::uint64_t, ByteView) {}
  // Applies a mutation without CAS checks or commit hooks (log replay).
  void apply_unlocked(Op op, const std::string& key, std::uint64_t version,
                      Bytes value);

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, Versioned> map_;
  std::size_t bytes_ = 0;
};

// In-memory map plus an append-only redo log; reopening the same path
// restores the last committed state. A torn final record is ignored.
class FileKvStore final : public InMemoryKvStore {
 public:
  static Result<std::unique_ptr<FileKvStore>> open(const std::string& path);
  ~FileKvStore() override;

  const std::string& path() const { return path_; }

 protected:
  void on_commit(Op op, ByteView key, std::uint64_t version,
                 ByteView value) override;

 private:
  explicit FileKvStore(std::string path) : path_(std::move(path)) {}

  std::string path_;
  std::FILE* log_ = nullptr;
};

}  // namespace cbdc::store

#endif  // CBDC_STORE_KV_STORE_H_
