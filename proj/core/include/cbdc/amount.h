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

#ifndef CBDC_AMOUNT_H_
#define CBDC_AMOUNT_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "cbdc/status.h"

namespace cbdc {

// Currency amount in integer minor units (e.g. cents). Arithmetic is
// overflow-checked; an overflow is a contract violation.
class Amount {
 public:
  constexpr Amount() = default;
  constexpr explicit Amount(std::int64_t minor_units) : minor_(minor_units) {}

  static constexpr Amount zero() { return Amount(0); }

  constexpr std::int64_t minor() const { return minor_; }
  constexpr bool is_zero() const { return minor_ == 0; }
  constexpr bool is_positive() const { return minor_ > 0; }
  constexpr bool is_negative() const { return minor_ < 0; }

  Amount operator+(Amount o) const {
    std::int64_t r;
    if (__builtin_add_overflow(minor_, o.minor_, &r)) {
      throw ContractViolation("amount overflow");
    }
    return Amount(r);
  }
  Amount operator-(Amount o) const {
    std::int64_t r;
    if (__builtin_sub_overflow(minor_, o.minor_, &r)) {
      throw ContractViolation("amount overflow");
    }
    return Amount(r);
  }
  Amount operator*(std::int64_t k) const {
    std::int64_t r;
    if (__builtin_mul_overflow(minor_, k, &r)) {
      throw ContractViolation("amount overflow");
    }
    return Amount(r);
  }
  Amount& operator+=(Amount o) { return *this = *this + o; }
  Amount& operator-=(Amount o) { return *this = *this - o; }

  friend constexpr auto operator<=>(Amount, Amount) = default;

  // "12.34" for 1234 minor units with two decimals.
  std::string to_string() const;
  static std::optional<Amount> parse(const std::string& text);

 private:
  std::int64_t minor_ = 0;
};

}  // namespace cbdc

#endif  // CBDC_AMOUNT_H_
