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

#include "cbdc/wire/codec.h"

#include <limits>

#include "cbdc/status.h"

namespace cbdc::wire {

void Writer::u16(std::uint16_t v) {
  out_.push_back(static_cast<std::uint8_t>(v >> 8));
  out_.push_back(static_cast<std::uint8_t>(v));
}

void Writer::u32(std::uint32_t v) { append_u32(out_, v); }

void Writer::u64(std::uint64_t v) { append_u64(out_, v); }

void Writer::var_bytes(ByteView b) {
  CBDC_EXPECTS(b.size() <= std::numeric_limits<std::uint16_t>::max(),
               "field exceeds 65535 bytes");
  u16(static_cast<std::uint16_t>(b.size()));
  raw(b);
}

void Writer::count(std::size_t n) {
  CBDC_EXPECTS(n <= std::numeric_limits<std::uint16_t>::max(),
               "list exceeds 65535 entries");
  u16(static_cast<std::uint16_t>(n));
}

bool Reader::take(std::size_t n, ByteView& out) {
  if (!ok_ || in_.size() - pos_ < n) {
    ok_ = false;
    return false;
  }
  out = in_.subspan(pos_, n);
  pos_ += n;
  return true;
}

std::uint8_t Reader::u8() {
  ByteView b;
  return take(1, b) ? b[0] : 0;
}

std::uint16_t Reader::u16() {
  ByteView b;
  if (!take(2, b)) return 0;
  return static_cast<std::uint16_t>(b[0] << 8 | b[1]);
}

std::uint32_t Reader::u32() {
  ByteView b;
  if (!take(4, b)) return 0;
  std::uint32_t v = 0;
  for (std::uint8_t x : b) v = v << 8 | x;
  return v;
}

std::uint64_t Reader::u64() {
  ByteView b;
  if (!take(8, b)) return 0;
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = v << 8 | x;
  return v;
}

bool Reader::boolean() {
  std::uint8_t v = u8();
  if (v > 1) ok_ = false;
  return v == 1;
}

Hash256 Reader::hash() {
  Hash256 h{};
  ByteView b;
  if (take(h.size(), b)) std::copy(b.begin(), b.end(), h.begin());
  return h;
}

Bytes Reader::raw(std::size_t n) {
  ByteView b;
  if (!take(n, b)) return {};
  return Bytes(b.begin(), b.end());
}

Bytes Reader::var_bytes() { return raw(u16()); }

std::string Reader::str() {
  Bytes b = var_bytes();
  return std::string(b.begin(), b.end());
}

}  // namespace cbdc::wire
