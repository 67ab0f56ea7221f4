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

#include "manimal/analysis/cfg.h"

#include <stdexcept>

#include "manimal/lang/printer.h"

namespace manimal::analysis {

namespace {

struct Pending {
  int block;
  EdgeKind kind;
};

class Builder {
 public:
  Cfg Build(const lang::StmtList& body) {
    NewBlock();  // entry
    NewBlock();  // exit
    pending_ = {{cfg_.entry, EdgeKind::kFall}};
    Walk(body);
    CloseCurrent();
    ConnectPending(cfg_.exit, false);
    return std::move(cfg_);
  }

 private:
  int NewBlock() {
    BasicBlock b;
    b.id = static_cast<int>(cfg_.blocks.size());
    cfg_.blocks.push_back(std::move(b));
    return cfg_.blocks.back().id;
  }

  void AddEdge(int from, int to, EdgeKind kind, bool back) {
    cfg_.blocks[static_cast<size_t>(from)].succs.push_back(CfgEdge{to, kind, back});
    cfg_.blocks[static_cast<size_t>(to)].preds.push_back(from);
  }

  void ConnectPending(int to, bool back) {
    for (const auto& p : pending_) AddEdge(p.block, to, p.kind, back);
    pending_.clear();
  }

  // Opens a block fed by the pending edges unless one is already open.
  int Current() {
    if (current_ < 0) {
      current_ = NewBlock();
      ConnectPending(current_, false);
    }
    return current_;
  }

  void CloseCurrent() {
    if (current_ >= 0) pending_.push_back({current_, EdgeKind::kFall});
    current_ = -1;
  }

  void Walk(const lang::StmtList& body) {
    for (const auto& s : body) Visit(*s);
  }

  void Visit(const lang::Stmt& s) {
    switch (s.kind) {
      case lang::StmtKind::kIf: {
        const int cond = Current();
        cfg_.blocks[static_cast<size_t>(cond)].branch = &s;
        cfg_.positions[s.id] = {cond, -1};
        current_ = -1;
        pending_ = {{cond, EdgeKind::kTrue}};
        Walk(s.body);
        CloseCurrent();
        std::vector<Pending> then_out = std::move(pending_);
        pending_ = {{cond, EdgeKind::kFalse}};
        Walk(s.else_body);
        CloseCurrent();
        pending_.insert(pending_.begin(), then_out.begin(), then_out.end());
        return;
      }
      case lang::StmtKind::kWhile: {
        CloseCurrent();
        const int header = NewBlock();
        ConnectPending(header, false);
        cfg_.blocks[static_cast<size_t>(header)].branch = &s;
        cfg_.positions[s.id] = {header, -1};
        pending_ = {{header, EdgeKind::kTrue}};
        Walk(s.body);
        CloseCurrent();
        ConnectPending(header, true);
        pending_ = {{header, EdgeKind::kFalse}};
        return;
      }
      default: {
        const int b = Current();
        auto& blk = cfg_.blocks[static_cast<size_t>(b)];
        cfg_.positions[s.id] = {b, static_cast<int>(blk.stmts.size())};
        blk.stmts.push_back(&s);
        return;
      }
    }
  }

  Cfg cfg_;
  std::vector<Pending> pending_;
  int current_ = -1;
};

std::string DotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\l";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

int Cfg::NumBackEdges() const {
  int n = 0;
  for (const auto& b : blocks) {
    for (const auto& e : b.succs) n += e.back ? 1 : 0;
  }
  return n;
}

const StmtPos& Cfg::PositionOf(int stmt_id) const {
  auto it = positions.find(stmt_id);
  if (it == positions.end()) throw std::out_of_range("statement " + std::to_string(stmt_id) + " not in CFG");
  return it->second;
}

std::string Cfg::ToDot() const {
  std::string out = "digraph cfg {\n  node [shape=box, fontname=monospace];\n";
  for (const auto& b : blocks) {
    std::string label;
    if (b.id == entry) label = "entry\n";
    if (b.id == exit) label = "exit\n";
    for (const auto* s : b.stmts) {
      label += "[" + std::to_string(s->id) + "] " + lang::PrintStmt(*s, 0);
    }
    if (b.branch) {
      label += "[" + std::to_string(b.branch->id) + "] " +
               (b.branch->kind == lang::StmtKind::kWhile ? "while " : "if ") + lang::PrintExpr(*b.branch->expr) +
               "\n";
    }
    out += "  b" + std::to_string(b.id) + " [label=\"" + DotEscape(label) + "\"];\n";
  }
  for (const auto& b : blocks) {
    for (const auto& e : b.succs) {
      out += "  b" + std::to_string(b.id) + " -> b" + std::to_string(e.to);
      std::string attrs;
      if (e.kind == EdgeKind::kTrue) attrs = "label=\"T\"";
      if (e.kind == EdgeKind::kFalse) attrs = "label=\"F\"";
      if (e.back) attrs += std::string(attrs.empty() ? "" : ", ") + "style=dashed";
      if (!attrs.empty()) out += " [" + attrs + "]";
      out += ";\n";
    }
  }
  return out + "}\n";
}

Cfg BuildCfg(const lang::StmtList& body) { return Builder().Build(body); }

}  // namespace manimal::analysis
