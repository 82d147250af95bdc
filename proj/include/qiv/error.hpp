// Copyright 2026 The qiv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QIV_ERROR_HPP
#define QIV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qiv {

/// Error codes exposed unchanged through the C API. Codes in [100, 200)
/// are input/validation failures; codes >= 200 are breaches of a numerical
/// contract detected after computation.
enum class ErrorCode : int {
  Ok = 0,
  Parse = 100,
  NonFinite = 101,
  NotHermitian = 102,
  NotPositive = 103,
  BadTrace = 104,
  BadNorm = 105,
  DimMismatch = 106,
  UnknownOutcome = 107,
  Completeness = 108,
  PovmSum = 109,
  BadPadding = 110,
  HeterogeneousOutputDims = 111,
  DimensionCap = 112,
  BadArgument = 113,
  NegativeTime = 114,
  StepTooLarge = 115,
  ZeroProbabilityBranch = 116,
  MissingBranch = 117,
  NullArgument = 118,
  PositivityLoss = 200,
  CompletionFailure = 201,
  ContractBreach = 202,
  Internal = 999,
};

const char* error_code_name(ErrorCode code);

inline bool is_validation_error(ErrorCode code) {
  const int v = static_cast<int>(code);
  return v >= 100 && v < 200;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qiv

#endif  // QIV_ERROR_HPP
