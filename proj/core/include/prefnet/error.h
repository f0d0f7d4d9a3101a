// Copyright 2026 The prefnet Authors.
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

#ifndef PREFNET_ERROR_H_
#define PREFNET_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace prefnet {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidSize,
  kIndex,
  kSelfLoop,
  kEmptyNetwork,
  kNoCommonUsers,
  kDimensionMismatch,
  kZeroRow,
  kIneligibleNode,
  kUndefinedMeasure,
  kDegenerateRow,
  kStuckWalker,
  kFormat,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All failures raised by the library carry a code so callers (the CLI in
// particular) can map them onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace prefnet

#endif  // PREFNET_ERROR_H_
