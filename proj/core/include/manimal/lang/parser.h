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

#pragma once

#include <string_view>

#include "manimal/lang/ast.h"

namespace manimal::lang {

/// Parses a `.mm` job file: schema declarations followed by one job.
/// Node ids are assigned in pre-order. Throws ParseError.
JobSpec ParseJob(std::string_view source);

/// Parses a standalone expression (used for descriptor condition atoms).
ExprPtr ParseExpression(std::string_view source);

}  // namespace manimal::lang
