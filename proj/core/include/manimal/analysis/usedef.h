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

#include <set>
#include <string>
#include <vector>

#include "manimal/analysis/reaching_defs.h"

namespace manimal::analysis {

enum class DagNodeKind : uint8_t {
  kUse,       // the statement the DAG was built for
  kDef,       // a let/assign reaching one of the uses
  kParam,     // leaf: map parameter (label carries an accessed field, if any)
  kMember,    // leaf: job member variable
  kConstant,  // leaf: literal
  kBuiltin,   // builtin call; its arguments hang below it
};

struct DagNode {
  DagNodeKind kind = DagNodeKind::kConstant;
  int stmt_id = -1;  // kUse / kDef
  int var = -1;      // kParam / kMember
  std::string label;
  bool pure = true;  // kBuiltin
  std::vector<int> children;
};

/// Transitive closure of the definitions influencing one statement. Edges
/// that would close a cycle (defs inside loops) are dropped, so the graph
/// is acyclic; every definition appears once.
struct UseDefDag {
  std::vector<DagNode> nodes;
  int root = 0;

  /// Statements in the DAG (the root plus every def), ascending by id.
  std::set<int> Statements() const;
  bool HasLeaf(DagNodeKind kind) const;
  std::string ToText() const;
};

class UseDefBuilder {
 public:
  UseDefBuilder(const Cfg& cfg, const ReachingDefs& rd, const lang::FunctionInfo& info)
      : cfg_(cfg), rd_(rd), info_(info) {}

  /// DAG for every expression evaluated by the statement: the rhs of a
  /// let/assign, the condition of if/while, both emit arguments, the
  /// expression of an expression or log statement.
  UseDefDag Build(const lang::Stmt& stmt) const;

 private:
  const Cfg& cfg_;
  const ReachingDefs& rd_;
  const lang::FunctionInfo& info_;
};

/// True iff the DAG depends only on parameters and constants through pure
/// builtins: no member leaves, no impure calls.
bool IsFunc(const UseDefDag& dag);

/// Expressions a statement evaluates, in evaluation order.
std::vector<lang::ExprPtr> StmtExprs(const lang::Stmt& s);

}  // namespace manimal::analysis
