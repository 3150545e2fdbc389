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

#ifndef CBDC_STATUS_H_
#define CBDC_STATUS_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

namespace cbdc {

// Protocol-level error codes. The numeric values travel on the wire inside
// Error messages, so existing values must never be renumbered.
enum class ErrorCode : std::uint16_t {
  kOk = 0,
  // wire
  kMalformedMessage = 1,
  kUnknownType = 2,
  kUnknownVersion = 3,
  // crypto
  kInvalidPoint = 10,
  kKeygenFailed = 11,
  // mint
  kConfigError = 20,
  kNotFound = 21,
  kUnknownBank = 22,
  kBadCountersignature = 23,
  kDenominationExpired = 24,
  kDenominationRevoked = 25,
  kInsufficientReserves = 26,
  kBadDenomSignature = 27,
  kBadCoinSignature = 28,
  kDoubleSpend = 29,
  kUnknownDenomination = 30,
  kUnknownSession = 31,
  kWrongState = 32,
  kForfeited = 33,
  kNotRevoked = 34,
  kNoMatchingWithdrawal = 35,
  kBadSignature = 36,
  kAlreadyRefunded = 37,
  kConflict = 38,
  kInvalidRequest = 39,
  kResidualMismatch = 40,
  // bank gateway
  kAuthFailed = 50,
  kInsufficientFunds = 51,
  kDailyLimitExceeded = 52,
  kMintRejected = 53,
  kUnknownMerchant = 54,
  kAccountMismatch = 55,
  kMerchantLimitExceeded = 56,
  kUnknownCustomer = 57,
  // wallet / merchant
  kExactCoverImpossible = 60,
  kBadMintSignature = 61,
  kInsufficientResidual = 62,
  kAmountMismatch = 63,
  // transport and harness
  kUnavailable = 70,
  kScenarioError = 71,
  kIoError = 72,
};

std::string_view error_code_name(ErrorCode code);

struct Error {
  ErrorCode code = ErrorCode::kOk;
  std::string message;
  // Set when a relaying party wraps a rejection from the next tier, e.g.
  // MintRejected(DoubleSpend).
  ErrorCode inner = ErrorCode::kOk;

  // Innermost code: `inner` when present, else `code`.
  ErrorCode root() const { return inner == ErrorCode::kOk ? code : inner; }
  std::string to_string() const;

  friend bool operator==(const Error&, const Error&) = default;
};

inline Error make_error(ErrorCode code, std::string message = {}) {
  return Error{code, std::move(message), ErrorCode::kOk};
}

// Thrown for programming errors (violated preconditions), never for
// conditions a remote party can trigger.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define CBDC_EXPECTS(cond, msg)                              \
  do {                                                       \
    if (!(cond)) throw ::cbdc::ContractViolation(msg);       \
  } while (false)

// Value-or-error return type used by every fallible protocol operation.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}
  Result(Error error) : state_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return state_.index() == 0; }
  explicit operator bool() const { return ok(); }

  T& value() & { return checked(); }
  const T& value() const& { return const_cast<Result*>(this)->checked(); }
  T&& value() && { return std::move(checked()); }

  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }
  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

  const Error& error() const {
    if (ok()) throw ContractViolation("Result::error() on a value");
    return std::get<1>(state_);
  }
  ErrorCode code() const { return ok() ? ErrorCode::kOk : error().code; }

 private:
  T& checked() {
    if (!ok()) {
      throw ContractViolation("Result::value() on error: " +
                              std::get<1>(state_).to_string());
    }
    return std::get<0>(state_);
  }

  std::variant<T, Error> state_;
};

struct Unit {
  friend bool operator==(Unit, Unit) = default;
};
using Status = Result<Unit>;

inline Status ok_status() { return Unit{}; }

#define CBDC_CONCAT_INNER_(a, b) a##b
#define CBDC_CONCAT_(a, b) CBDC_CONCAT_INNER_(a, b)

#define CBDC_RETURN_IF_ERROR(expr)                 \
  do {                                             \
    auto cbdc_status_ = (expr);                    \
    if (!cbdc_status_.ok()) return cbdc_status_.error(); \
  } while (false)

#define CBDC_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                \
  if (!tmp.ok()) return tmp.error();                \
  lhs = std::move(tmp).value()

#define CBDC_ASSIGN_OR_RETURN(lhs, expr) \
  CBDC_ASSIGN_OR_RETURN_IMPL_(CBDC_CONCAT_(cbdc_result_, __LINE__), lhs, expr)

}  // namespace cbdc

#endif  // CBDC_STATUS_H_
