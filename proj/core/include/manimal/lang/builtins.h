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

#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "manimal/lang/ast.h"

namespace manimal::lang {

/// One whitelisted library call. `pure` means the result is a function of
/// the arguments alone; impure calls (the member-table ops) make any
/// use-def DAG containing them non-functional. `equality_preserving` marks
/// injective calls (a == b iff f(a) == f(b)).
struct BuiltinInfo {
  std::string_view name;
  int arity;
  bool pure;
  bool equality_preserving;
  bool reduce_only;
};

const BuiltinInfo* FindBuiltin(std::string_view name);
std::span<const BuiltinInfo> AllBuiltins();

/// Result type of a call with the given argument types, or a message
/// explaining the mismatch.
std::variant<Type, std::string> BuiltinResultType(const BuiltinInfo& b, std::span<const Type> args);

}  // namespace manimal::lang
