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

#include <string>
#include <vector>

#include "manimal/lang/ast.h"

namespace manimal::lang {

enum class VarKind : uint8_t { kParam, kMember, kLocal };

struct VarInfo {
  std::string name;
  VarKind kind = VarKind::kLocal;
  Type type;
  int decl_id = -1;  // declaring `let` statement, -1 for params and members
};

/// Variable slots of one function body. Members occupy slots [0, members),
/// followed by the two parameters, then locals in declaration order.
struct FunctionInfo {
  std::vector<VarInfo> vars;
  int key_var = -1;
  int value_var = -1;
};

struct TypedJob {
  JobSpec spec;  // annotated deep copy of the parsed job
  FunctionInfo map_info;
  FunctionInfo reduce_info;
  Type map_out_key;
  Type map_out_value;
  Type out_key;
  Type out_value;

  /// Layout of the job's output file: the reduce key plus one field "value".
  RecordLayout OutputLayout() const;
};

/// Resolves names and annotates every expression with its type. The input
/// is not modified. Throws TypeError naming the offending statement.
TypedJob Typecheck(const JobSpec& job);

/// Typechecks a free-standing condition over a record, binding `k` to the
/// schema key (slot 0) and `v` to the value record (slot 1). Used to
/// validate injected descriptor atoms; rejects anything but params,
/// constants and pure builtins.
void TypecheckCondition(const ExprPtr& cond, const Schema& schema);

}  // namespace manimal::lang
