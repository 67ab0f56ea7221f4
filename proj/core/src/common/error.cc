// Copyright 2026 The Manimal Authors
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

#include "manimal/common/error.h"

namespace manimal {

ParseError::ParseError(SourceLoc loc, const std::string& message)
    : Error(ErrorCategory::kPlan, std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                                      ": parse error: " + message),
      loc_(loc),
      message_(message) {}

TypeError::TypeError(int stmt_id, const std::string& message)
    : Error(ErrorCategory::kPlan, "type error at node " + std::to_string(stmt_id) + ": " + message),
      stmt_id_(stmt_id) {}

JobError::JobError(int stmt_id, const std::string& message)
    : Error(ErrorCategory::kData, "job error at node " + std::to_string(stmt_id) + ": " + message),
      stmt_id_(stmt_id) {}

}  // namespace manimal
