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

#ifndef CBDC_WIRE_CODEC_H_
#define CBDC_WIRE_CODEC_H_

#include <cstdint>
#include <string>

#include "cbdc/amount.h"
#include "cbdc/bytes.h"

namespace cbdc::wire {

// Big-endian primitive writer. Variable-length fields carry a 2-byte
// length prefix; lists carry a 2-byte count.
class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void boolean(bool v) { u8(v ? 1 : 0); }
  void amount(Amount a) { i64(a.minor()); }
  void hash(const Hash256& h) { raw(h); }
  void raw(ByteView b) { append(out_, b); }
  void var_bytes(ByteView b);
  void str(const std::string& s) { var_bytes(as_view(s)); }
  void count(std::size_t n);

  const Bytes& bytes() const& { return out_; }
  Bytes take() && { return std::move(out_); }

 private:
  Bytes out_;
};

// Reader with a sticky failure flag: after the first short read every
// accessor returns a zero value and ok() stays false.
class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  bool boolean();
  Amount amount() { return Amount(i64()); }
  Hash256 hash();
  Bytes var_bytes();
  std::string str();
  std::uint16_t count() { return u16(); }
  Bytes raw(std::size_t n);

  void fail() { ok_ = false; }
  bool ok() const { return ok_; }
  bool at_end() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return ok_ ? in_.size() - pos_ : 0; }

 private:
  bool take(std::size_t n, ByteView& out);

  ByteView in_;
  std::size_t pos_ = 0;
  bool ok_ = true;
};

}  // namespace cbdc::wire

#endif  // CBDC_WIRE_CODEC_H_
