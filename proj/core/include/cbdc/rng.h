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

#ifndef CBDC_RNG_H_
#define CBDC_RNG_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

#include "cbdc/bytes.h"

namespace cbdc {

// Deterministic random bit generator: SHA-256 in counter mode over a
// 32-byte seed. Every random choice in the library draws from an injected
// Drbg, so equal seeds give bit-identical transcripts.
//
// Satisfies std::uniform_random_bit_generator.
class Drbg {
 public:
  using result_type = std::uint64_t;

  explicit Drbg(std::uint64_t seed);
  explicit Drbg(const Hash256& seed) : key_(seed) {}

  // Independent child stream; the parent state is not advanced.
  Drbg fork(std::string_view label) const;

  void fill(std::span<std::uint8_t> out);
  Bytes bytes(std::size_t n);
  Hash256 hash256();

  std::uint64_t next_u64();
  // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t uniform(std::uint64_t bound);
  // Uniform in [0, 1).
  double uniform_double();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  Hash256 key_;
  std::uint64_t counter_ = 0;
  Hash256 block_{};
  std::size_t used_ = sizeof(Hash256);
};

}  // namespace cbdc

#endif  // CBDC_RNG_H_
