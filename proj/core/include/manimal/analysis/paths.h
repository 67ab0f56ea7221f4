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
#include "manimal/common/error.h"

namespace manimal::analysis {

/// Some entry-to-statement path runs through a loop back edge.
class CyclicPathError : public Error {
 public:
  explicit CyclicPathError(const std::string& message) : Error(ErrorCategory::kPlan, message) {}
};

/// Path enumeration exceeded its budget.
class PathLimitError : public Error {
 public:
  explicit PathLimitError(const std::string& message) : Error(ErrorCategory::kPlan, message) {}
};

struct PathCond {
  const lang::Stmt* branch = nullptr;  // the if/while whose condition was tested
  bool polarity = true;                // false: the else edge was taken
};

struct CfgPath {
  std::vector<int> blocks;  // entry first, target block last
  std::vector<PathCond> conds;
};

inline constexpr size_t kDefaultPathLimit = 10000;

/// All simple entry-to-statement paths with their branch conditions, in a
/// deterministic order (true edges explored before false edges).
std::vector<CfgPath> EnumeratePaths(const Cfg& cfg, int stmt_id, size_t limit = kDefaultPathLimit);

/// Whether `to` is reachable from `from` (following every edge).
bool Reachable(const Cfg& cfg, int from, int to);

}  // namespace manimal::analysis
