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

#include "pcdm/error.h"

namespace pcdm {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kFileNotFound: return "file not found";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kCorruptData: return "corrupt data";
    case ErrorCode::kIoError: return "i/o error";
    case ErrorCode::kValueOutOfRange: return "value out of range";
    case ErrorCode::kParseError: return "parse error";
    case ErrorCode::kSimplexViolation: return "simplex violation";
    case ErrorCode::kWrongRowCount: return "wrong row count";
    case ErrorCode::kDegenerateTerm: return "degenerate term";
    case ErrorCode::kInfeasibleMarginals: return "infeasible marginals";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kTooSmall: return "image too small";
    case ErrorCode::kMissingFile: return "missing file";
    case ErrorCode::kUnknownClass: return "unknown class";
    case ErrorCode::kDegenerateInput: return "degenerate input";
    case ErrorCode::kNonConvergence: return "non-convergence";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(ErrorCodeName(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

}  // namespace pcdm
