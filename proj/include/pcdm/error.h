// Copyright 2026 The PCDM Authors
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

#ifndef PCDM_ERROR_H_
#define PCDM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcdm {

enum class ErrorCode {
  kInvalidArgument,
  kFileNotFound,
  kUnsupportedFormat,
  kCorruptData,
  kIoError,
  kValueOutOfRange,
  kParseError,
  kSimplexViolation,
  kWrongRowCount,
  kDegenerateTerm,
  kInfeasibleMarginals,
  kDimensionMismatch,
  kTooSmall,
  kMissingFile,
  kUnknownClass,
  kDegenerateInput,
  kNonConvergence,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported with this exception.
// The message is prefixed with a lower-case description of the code, e.g.
// "dimension mismatch: 10x10 vs 12x10".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pcdm

#endif  // PCDM_ERROR_H_
