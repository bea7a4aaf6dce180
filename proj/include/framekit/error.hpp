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

#ifndef FRAMEKIT_ERROR_HPP_
#define FRAMEKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace framekit {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotSymmetric,
  kNotOrthogonal,
  kSingular,
  kInterlacing,
  kInfeasible,
  kTruncation,
  kNegativeRadicand,
  kDuality,
  kTolerance,
  kGuard,
  kParse,
  kIo,
};

/// Stable machine-readable name, e.g. "singular_frame_operator".
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace framekit

#endif  // FRAMEKIT_ERROR_HPP_
