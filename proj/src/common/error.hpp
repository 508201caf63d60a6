// Copyright 2026 The GSC Authors.
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

#ifndef GSC_COMMON_ERROR_HPP
#define GSC_COMMON_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gsc {

// Values are part of the C ABI (see gsc.h); append only.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kTruncated = 3,
  kBadMagic = 4,
  kVersionMismatch = 5,
  kDimensionMismatch = 6,
  kBudgetInfeasible = 7,
  kAdapter = 8,
  kProtocol = 9,
  kTimeout = 10,
  kIo = 11,
  kRankDeficient = 12,
  kCorruptStream = 13,
  kValidation = 14,
  kCapability = 15,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gsc

#endif  // GSC_COMMON_ERROR_HPP
