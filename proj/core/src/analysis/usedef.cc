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

#include "manimal/analysis/usedef.h"

#include <map>

#include "manimal/lang/builtins.h"
#include "manimal/lang/printer.h"

namespace manimal::analysis {

namespace {

class DagBuilder {
 public:
  DagBuilder(const ReachingDefs& rd, const lang::FunctionInfo& info) : rd_(rd), info_(info) {}

  UseDefDag Run(const lang::Stmt& stmt) {
    dag_.root = AddStmtNode(stmt, DagNodeKind::kUse);
    return std::move(dag_);
  }

 private:
  int Add(DagNode n) {
    dag_.nodes.push_back(std::move(n));
    return static_cast<int>(dag_.nodes.size()) - 1;
  }

  int AddStmtNode(const lang::Stmt& s, DagNodeKind kind) {
    DagNode n;
    n.kind = kind;
    n.stmt_id = s.id;
    n.label = "[" + std::to_string(s.id) + "]";
    if (kind == DagNodeKind::kDef) n.label += " " + s.target;
    const int idx = Add(std::move(n));
    if (kind == DagNodeKind::kDef) def_nodes_[s.id] = idx;
    on_stack_.insert(s.id);
    std::vector<int> children;
    for (const auto& e : StmtExprs(s)) Expand(*e, s.id, children);
    dag_.nodes[static_cast<size_t>(idx)].children = std::move(children);
    on_stack_.erase(s.id);
    return idx;
  }

  void Expand(const lang::Expr& e, int at_stmt, std::vector<int>& out) {
    using lang::ExprKind;
    switch (e.kind) {
      case ExprKind::kIntLit:
      case ExprKind::kStrLit:
      case ExprKind::kBoolLit:
      case ExprKind::kTokenLit: {
        DagNode n;
        n.kind = DagNodeKind::kConstant;
        n.label = lang::PrintExpr(e);
        out.push_back(Add(std::move(n)));
        return;
      }
      case ExprKind::kVarRef: VarUse(e, "", at_stmt, out); return;
      case ExprKind::kFieldAccess: {
        const lang::Expr& base = *e.operands[0];
        if (base.kind == ExprKind::kVarRef) {
          VarUse(base, e.text, at_stmt, out);
        } else {
          Expand(base, at_stmt, out);
        }
        return;
      }
      case ExprKind::kCall: {
        const auto* b = lang::FindBuiltin(e.text);
        DagNode n;
        n.kind = DagNodeKind::kBuiltin;
        n.label = e.text + "()";
        n.pure = b != nullptr && b->pure;
        std::vector<int> children;
        for (const auto& a : e.operands) Expand(*a, at_stmt, children);
        n.children = std::move(children);
        out.push_back(Add(std::move(n)));
        return;
      }
      default:
        for (const auto& op : e.operands) Expand(*op, at_stmt, out);
        return;
    }
  }

  void VarUse(const lang::Expr& ref, const std::string& field, int at_stmt, std::vector<int>& out) {
    for (int d : rd_.Reaching(at_stmt, ref.var)) {
      const Definition& def = rd_.defs()[static_cast<size_t>(d)];
      if (def.stmt == nullptr) {
        const lang::VarInfo& vi = info_.vars[static_cast<size_t>(def.var)];
        DagNode n;
        n.kind = vi.kind == lang::VarKind::kMember ? DagNodeKind::kMember : DagNodeKind::kParam;
        n.var = def.var;
        n.label = vi.name + (field.empty() ? "" : "." + field);
        out.push_back(Add(std::move(n)));
        continue;
      }
      if (on_stack_.count(def.stmt->id)) continue;  // would close a cycle
      auto it = def_nodes_.find(def.stmt->id);
      out.push_back(it != def_nodes_.end() ? it->second : AddStmtNode(*def.stmt, DagNodeKind::kDef));
    }
  }

  const ReachingDefs& rd_;
  const lang::FunctionInfo& info_;
  UseDefDag dag_;
  std::map<int, int> def_nodes_;
  std::set<int> on_stack_;
};

void PrintNode(const UseDefDag& dag, int idx, int depth, std::set<int>& shown, std::string& out) {
  const DagNode& n = dag.nodes[static_cast<size_t>(idx)];
  static constexpr const char* kKinds[] = {"use", "def", "param", "member", "const", "builtin"};
  out += std::string(static_cast<size_t>(depth) * 2, ' ') + kKinds[static_cast<int>(n.kind)] + " " + n.label;
  if (n.kind == DagNodeKind::kBuiltin && !n.pure) out += " (impure)";
  const bool repeat = (n.kind == DagNodeKind::kDef) && !shown.insert(idx).second;
  if (repeat) {
    out += " ^\n";
    return;
  }
  out += "\n";
  for (int c : n.children) PrintNode(dag, c, depth + 1, shown, out);
}

}  // namespace

std::vector<lang::ExprPtr> StmtExprs(const lang::Stmt& s) {
  std::vector<lang::ExprPtr> out;
  if (s.expr) out.push_back(s.expr);
  if (s.value) out.push_back(s.value);
  return out;
}

std::set<int> UseDefDag::Statements() const {
  std::set<int> out;
  for (const auto& n : nodes) {
    if (n.kind == DagNodeKind::kUse || n.kind == DagNodeKind::kDef) out.insert(n.stmt_id);
  }
  return out;
}

bool UseDefDag::HasLeaf(DagNodeKind kind) const {
  for (const auto& n : nodes) {
    if (n.kind == kind) return true;
  }
  return false;
}

std::string UseDefDag::ToText() const {
  std::string out;
  std::set<int> shown;
  if (!nodes.empty()) PrintNode(*this, root, 0, shown, out);
  return out;
}

UseDefDag UseDefBuilder::Build(const lang::Stmt& stmt) const {
  (void)cfg_;
  return DagBuilder(rd_, info_).Run(stmt);
}

bool IsFunc(const UseDefDag& dag) {
  for (const auto& n : dag.nodes) {
    if (n.kind == DagNodeKind::kMember) return false;
    if (n.kind == DagNodeKind::kBuiltin && !n.pure) return false;
  }
  return true;
}

}  // namespace manimal::analysis
