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

#include "cbdc/rng.h"

#include <algorithm>

#include "cbdc/status.h"

namespace cbdc {

Drbg::Drbg(std::uint64_t seed) {
  Bytes s = to_bytes("cbdc-drbg-seed");
  append_u64(s, seed);
  key_ = sha256(s);
}

Drbg Drbg::fork(std::string_view label) const {
  return Drbg(sha256({as_view("cbdc-drbg-fork"), key_, as_view(label)}));
}

void Drbg::refill() {
  Bytes ctr;
  append_u64(ctr, counter_++);
  block_ = sha256({key_, ctr});
  used_ = 0;
}

void Drbg::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (used_ == block_.size()) refill();
    std::size_t n = std::min(out.size() - done, block_.size() - used_);
    std::copy_n(block_.begin() + used_, n, out.begin() + done);
    used_ += n;
    done += n;
  }
}

Bytes Drbg::bytes(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

Hash256 Drbg::hash256() {
  Hash256 out;
  fill(out);
  return out;
}

std::uint64_t Drbg::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = v << 8 | b;
  return v;
}

std::uint64_t Drbg::uniform(std::uint64_t bound) {
  CBDC_EXPECTS(bound > 0, "uniform bound must be positive");
  std::uint64_t limit = max() - max() % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Drbg::uniform_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace cbdc
