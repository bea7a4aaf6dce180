// Copyright 2026 The Framekit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "framekit/error.hpp"

namespace framekit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kNotSymmetric:
      return "not_symmetric";
    case ErrorCode::kNotOrthogonal:
      return "not_orthogonal";
    case ErrorCode::kSingular:
      return "singular_frame_operator";
    case ErrorCode::kInterlacing:
      return "interlacing_violated";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kTruncation:
      return "nonzero_truncated";
    case ErrorCode::kNegativeRadicand:
      return "negative_radicand";
    case ErrorCode::kDuality:
      return "duality_violated";
    case ErrorCode::kTolerance:
      return "tolerance_exceeded";
    case ErrorCode::kGuard:
      return "guard_violated";
    case ErrorCode::kParse:
      return "parse_error";
    case ErrorCode::kIo:
      return "io_error";
  }
  return "unknown";
}

}  // namespace framekit
