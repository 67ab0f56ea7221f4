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

#include "manimal/analysis/reaching_defs.h"

#include <deque>

namespace manimal::analysis {

ReachingDefs::ReachingDefs(const Cfg& cfg, const lang::FunctionInfo& info) : cfg_(cfg) {
  defs_of_var_.resize(info.vars.size());
  for (size_t v = 0; v < info.vars.size(); ++v) {
    if (info.vars[v].kind == lang::VarKind::kLocal) continue;
    defs_of_var_[v].push_back(static_cast<int>(defs_.size()));
    defs_.push_back(Definition{static_cast<int>(v), nullptr});
  }
  int max_id = -1;
  for (const auto& [id, pos] : cfg.positions) max_id = std::max(max_id, id);
  def_of_stmt_.assign(static_cast<size_t>(max_id + 1), -1);
  for (const auto& b : cfg.blocks) {
    for (const auto* s : b.stmts) {
      if ((s->kind != lang::StmtKind::kLet && s->kind != lang::StmtKind::kAssign) || s->var < 0) continue;
      def_of_stmt_[static_cast<size_t>(s->id)] = static_cast<int>(defs_.size());
      defs_of_var_[static_cast<size_t>(s->var)].push_back(static_cast<int>(defs_.size()));
      defs_.push_back(Definition{s->var, s});
    }
  }

  const size_t n = defs_.size();
  in_.assign(cfg.blocks.size(), std::vector<bool>(n, false));
  std::vector<std::vector<bool>> out(cfg.blocks.size(), std::vector<bool>(n, false));
  std::vector<bool> entry_out(n, false);
  for (size_t d = 0; d < n; ++d) entry_out[d] = defs_[d].stmt == nullptr;
  out[static_cast<size_t>(cfg.entry)] = entry_out;

  std::deque<int> work;
  std::vector<bool> queued(cfg.blocks.size(), false);
  for (const auto& b : cfg.blocks) {
    if (b.id == cfg.entry) continue;
    work.push_back(b.id);
    queued[static_cast<size_t>(b.id)] = true;
  }
  while (!work.empty()) {
    const int b = work.front();
    work.pop_front();
    queued[static_cast<size_t>(b)] = false;
    const BasicBlock& blk = cfg.blocks[static_cast<size_t>(b)];
    std::vector<bool> in(n, false);
    for (int p : blk.preds) {
      const auto& po = out[static_cast<size_t>(p)];
      for (size_t d = 0; d < n; ++d) in[d] = in[d] || po[d];
    }
    std::vector<bool> o = in;
    for (const auto* s : blk.stmts) Transfer(*s, o);
    in_[static_cast<size_t>(b)] = std::move(in);
    if (o != out[static_cast<size_t>(b)]) {
      out[static_cast<size_t>(b)] = std::move(o);
      for (const auto& e : blk.succs) {
        if (!queued[static_cast<size_t>(e.to)]) {
          queued[static_cast<size_t>(e.to)] = true;
          work.push_back(e.to);
        }
      }
    }
  }
}

void ReachingDefs::Transfer(const lang::Stmt& s, std::vector<bool>& set) const {
  if (static_cast<size_t>(s.id) >= def_of_stmt_.size()) return;
  const int d = def_of_stmt_[static_cast<size_t>(s.id)];
  if (d < 0) return;
  for (int other : defs_of_var_[static_cast<size_t>(s.var)]) set[static_cast<size_t>(other)] = false;
  set[static_cast<size_t>(d)] = true;
}

std::vector<int> ReachingDefs::Reaching(int stmt_id, int var) const {
  const StmtPos& pos = cfg_.PositionOf(stmt_id);
  const BasicBlock& blk = cfg_.blocks[static_cast<size_t>(pos.block)];
  std::vector<bool> set = in_[static_cast<size_t>(pos.block)];
  const size_t upto = pos.index < 0 ? blk.stmts.size() : static_cast<size_t>(pos.index);
  for (size_t i = 0; i < upto; ++i) Transfer(*blk.stmts[i], set);
  std::vector<int> out;
  for (int d : defs_of_var_[static_cast<size_t>(var)]) {
    if (set[static_cast<size_t>(d)]) out.push_back(d);
  }
  return out;
}

}  // namespace manimal::analysis
