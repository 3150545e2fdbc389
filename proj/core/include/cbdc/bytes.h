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

#ifndef CBDC_BYTES_H_
#define CBDC_BYTES_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbdc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Hash256 = std::array<std::uint8_t, 32>;

inline ByteView as_view(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}
inline Bytes to_bytes(std::string_view s) {
  auto v = as_view(s);
  return {v.begin(), v.end()};
}

std::string to_hex(ByteView data);
std::optional<Bytes> from_hex(std::string_view hex);

void append(Bytes& out, ByteView data);
void append_u32(Bytes& out, std::uint32_t v);
void append_u64(Bytes& out, std::uint64_t v);

// Incremental SHA-256 (OpenSSL EVP underneath).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(ByteView data);
  Sha256& update(std::string_view data) { return update(as_view(data)); }
  Hash256 finish();

 private:
  struct Ctx;
  std::unique_ptr<Ctx> ctx_;
};

Hash256 sha256(ByteView data);
Hash256 sha256(std::initializer_list<ByteView> parts);

// First eight bytes of a digest read as a big-endian integer.
std::uint64_t hash_prefix_u64(const Hash256& h);

}  // namespace cbdc

#endif  // CBDC_BYTES_H_
