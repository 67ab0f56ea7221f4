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

#include <vector>

#include "manimal/analysis/cfg.h"
#include "manimal/lang/typecheck.h"

namespace manimal::analysis {

/// One definition site. Parameters and members get a pseudo-definition at
/// function entry (stmt == nullptr).
struct Definition {
  int var = -1;
  const lang::Stmt* stmt = nullptr;
};

/// Classic forward may-analysis over the CFG.
class ReachingDefs {
 public:
  ReachingDefs(const Cfg& cfg, const lang::FunctionInfo& info);

  const std::vector<Definition>& defs() const { return defs_; }

  /// Indices into defs() of the definitions of `var` reaching the point just
  /// before statement `stmt_id` runs (for if/while: before the condition).
  std::vector<int> Reaching(int stmt_id, int var) const;

  /// Defs of every variable live at block entry, for tests.
  const std::vector<bool>& In(int block) const { return in_[static_cast<size_t>(block)]; }

 private:
  void Transfer(const lang::Stmt& s, std::vector<bool>& set) const;

  const Cfg& cfg_;
  std::vector<Definition> defs_;
  std::vector<std::vector<int>> defs_of_var_;
  std::vector<int> def_of_stmt_;  // indexed by statement id, -1 if none
  std::vector<std::vector<bool>> in_;
};

}  // namespace manimal::analysis
