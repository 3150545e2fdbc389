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

#include "cbdc/status.h"

namespace cbdc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kMalformedMessage: return "MalformedMessage";
    case ErrorCode::kUnknownType: return "UnknownType";
    case ErrorCode::kUnknownVersion: return "UnknownVersion";
    case ErrorCode::kInvalidPoint: return "InvalidPoint";
    case ErrorCode::kKeygenFailed: return "KeygenFailed";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kUnknownBank: return "UnknownBank";
    case ErrorCode::kBadCountersignature: return "BadCountersignature";
    case ErrorCode::kDenominationExpired: return "DenominationExpired";
    case ErrorCode::kDenominationRevoked: return "DenominationRevoked";
    case ErrorCode::kInsufficientReserves: return "InsufficientReserves";
    case ErrorCode::kBadDenomSignature: return "BadDenomSignature";
    case ErrorCode::kBadCoinSignature: return "BadCoinSignature";
    case ErrorCode::kDoubleSpend: return "DoubleSpend";
    case ErrorCode::kUnknownDenomination: return "UnknownDenomination";
    case ErrorCode::kUnknownSession: return "UnknownSession";
    case ErrorCode::kWrongState: return "WrongState";
    case ErrorCode::kForfeited: return "Forfeited";
    case ErrorCode::kNotRevoked: return "NotRevoked";
    case ErrorCode::kNoMatchingWithdrawal: return "NoMatchingWithdrawal";
    case ErrorCode::kBadSignature: return "BadSignature";
    case ErrorCode::kAlreadyRefunded: return "AlreadyRefunded";
    case ErrorCode::kConflict: return "Conflict";
    case ErrorCode::kInvalidRequest: return "InvalidRequest";
    case ErrorCode::kResidualMismatch: return "ResidualMismatch";
    case ErrorCode::kAuthFailed: return "AuthFailed";
    case ErrorCode::kInsufficientFunds: return "InsufficientFunds";
    case ErrorCode::kDailyLimitExceeded: return "DailyLimitExceeded";
    case ErrorCode::kMintRejected: return "MintRejected";
    case ErrorCode::kUnknownMerchant: return "UnknownMerchant";
    case ErrorCode::kAccountMismatch: return "AccountMismatch";
    case ErrorCode::kMerchantLimitExceeded: return "MerchantLimitExceeded";
    case ErrorCode::kUnknownCustomer: return "UnknownCustomer";
    case ErrorCode::kExactCoverImpossible: return "ExactCoverImpossible";
    case ErrorCode::kBadMintSignature: return "BadMintSignature";
    case ErrorCode::kInsufficientResidual: return "InsufficientResidual";
    case ErrorCode::kAmountMismatch: return "AmountMismatch";
    case ErrorCode::kUnavailable: return "Unavailable";
    case ErrorCode::kScenarioError: return "ScenarioError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string Error::to_string() const {
  std::string out(error_code_name(code));
  if (inner != ErrorCode::kOk) {
    out += "(";
    out += error_code_name(inner);
    out += ")";
  }
  if (!message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

}  // namespace cbdc
