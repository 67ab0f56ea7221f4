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

#include <map>
#include <string>
#include <vector>

#include "manimal/lang/ast.h"

namespace manimal::analysis {

enum class EdgeKind : uint8_t { kFall, kTrue, kFalse };

struct CfgEdge {
  int to = -1;
  EdgeKind kind = EdgeKind::kFall;
  bool back = false;  // loop back edge (body end -> while header)
};

/// Straight-line statements, optionally terminated by the condition of an
/// `if` or `while` (the branch statement). Entry and exit carry neither.
struct BasicBlock {
  int id = -1;
  std::vector<const lang::Stmt*> stmts;
  const lang::Stmt* branch = nullptr;
  std::vector<CfgEdge> succs;
  std::vector<int> preds;
};

struct StmtPos {
  int block = -1;
  int index = -1;  // position in BasicBlock::stmts, -1 for a branch condition
};

struct Cfg {
  std::vector<BasicBlock> blocks;
  int entry = 0;
  int exit = 1;
  std::map<int, StmtPos> positions;  // statement id -> location

  int NumBackEdges() const;
  const StmtPos& PositionOf(int stmt_id) const;
  /// Graphviz rendering, one node per block.
  std::string ToDot() const;
};

/// Builds the control-flow graph of a function body. The AST must outlive
/// the graph, which keeps raw pointers into it.
Cfg BuildCfg(const lang::StmtList& body);

}  // namespace manimal::analysis
