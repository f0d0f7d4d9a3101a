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

#include "prefnet/error.h"

namespace prefnet {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidSize: return "invalid-size";
    case ErrorCode::kIndex: return "index";
    case ErrorCode::kSelfLoop: return "self-loop";
    case ErrorCode::kEmptyNetwork: return "empty-network";
    case ErrorCode::kNoCommonUsers: return "no-common-users";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kZeroRow: return "zero-row";
    case ErrorCode::kIneligibleNode: return "ineligible-node";
    case ErrorCode::kUndefinedMeasure: return "undefined-measure";
    case ErrorCode::kDegenerateRow: return "degenerate-row";
    case ErrorCode::kStuckWalker: return "stuck-walker";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace prefnet
