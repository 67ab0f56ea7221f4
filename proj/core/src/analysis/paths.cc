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

#include "manimal/analysis/paths.h"

namespace manimal::analysis {

namespace {

class PathFinder {
 public:
  PathFinder(const Cfg& cfg, int target, size_t limit)
      : cfg_(cfg), target_(target), limit_(limit), on_path_(cfg.blocks.size(), false) {}

  std::vector<CfgPath> Run() {
    Dfs(cfg_.entry);
    return std::move(paths_);
  }

 private:
  void Dfs(int b) {
    cur_.blocks.push_back(b);
    on_path_[static_cast<size_t>(b)] = true;
    if (b == target_) {
      if (paths_.size() >= limit_) {
        throw PathLimitError("more than " + std::to_string(limit_) + " paths");
      }
      paths_.push_back(cur_);
    } else {
      const BasicBlock& blk = cfg_.blocks[static_cast<size_t>(b)];
      for (const auto& e : blk.succs) {
        if (e.back || on_path_[static_cast<size_t>(e.to)]) continue;
        const bool cond = e.kind != EdgeKind::kFall;
        if (cond) cur_.conds.push_back({blk.branch, e.kind == EdgeKind::kTrue});
        Dfs(e.to);
        if (cond) cur_.conds.pop_back();
      }
    }
    on_path_[static_cast<size_t>(b)] = false;
    cur_.blocks.pop_back();
  }

  const Cfg& cfg_;
  int target_;
  size_t limit_;
  std::vector<bool> on_path_;
  CfgPath cur_;
  std::vector<CfgPath> paths_;
};

}  // namespace

bool Reachable(const Cfg& cfg, int from, int to) {
  std::vector<bool> seen(cfg.blocks.size(), false);
  std::vector<int> stack = {from};
  seen[static_cast<size_t>(from)] = true;
  while (!stack.empty()) {
    const int b = stack.back();
    stack.pop_back();
    if (b == to) return true;
    for (const auto& e : cfg.blocks[static_cast<size_t>(b)].succs) {
      if (!seen[static_cast<size_t>(e.to)]) {
        seen[static_cast<size_t>(e.to)] = true;
        stack.push_back(e.to);
      }
    }
  }
  return false;
}

std::vector<CfgPath> EnumeratePaths(const Cfg& cfg, int stmt_id, size_t limit) {
  const int target = cfg.PositionOf(stmt_id).block;
  // A path entry -> u -> h -> target through back edge (u, h) exists iff the
  // target is reachable from h (every block is reachable from entry).
  for (const auto& b : cfg.blocks) {
    for (const auto& e : b.succs) {
      if (e.back && Reachable(cfg, e.to, target)) {
        throw CyclicPathError("statement " + std::to_string(stmt_id) + " is reachable through a loop");
      }
    }
  }
  return PathFinder(cfg, target, limit).Run();
}

}  // namespace manimal::analysis
