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

#include "manimal/detectors/dnf.h"

#include "manimal/lang/parser.h"
#include "manimal/lang/printer.h"

namespace manimal::detectors {

namespace {

std::optional<Dnf> Or(Dnf a, const Dnf& b, size_t max_disjuncts) {
  if (a.IsTrue() || b.IsTrue()) return Dnf::True();
  if (a.disjuncts.size() + b.disjuncts.size() > max_disjuncts) return std::nullopt;
  a.disjuncts.insert(a.disjuncts.end(), b.disjuncts.begin(), b.disjuncts.end());
  return a;
}

lang::ExprPtr FlipComparison(const lang::Expr& e) {
  auto out = std::make_shared<lang::Expr>(e);
  out->binary_op = lang::NegateComparison(e.binary_op);
  return out;
}

size_t TreeSize(const lang::Expr& e, size_t cap) {
  size_t n = 1;
  for (const auto& op : e.operands) {
    n += TreeSize(*op, cap);
    if (n > cap) return n;
  }
  return n;
}

}  // namespace

bool Dnf::IsTrue() const {
  for (const auto& c : disjuncts) {
    if (c.empty()) return true;
  }
  return false;
}

std::string AtomText(const Atom& a) {
  const std::string s = lang::PrintExpr(*a.expr);
  return a.positive ? s : "!(" + s + ")";
}

Atom AtomFromText(const std::string& text) {
  lang::ExprPtr e = lang::ParseExpression(text);
  if (e->kind == lang::ExprKind::kUnary && e->unary_op == lang::UnaryOp::kNot) {
    const auto& inner = e->operands[0];
    if (inner->kind == lang::ExprKind::kBinary && lang::IsComparison(inner->binary_op)) {
      return Atom{FlipComparison(*inner), true};
    }
    return Atom{inner, false};
  }
  return Atom{e, true};
}

std::string Dnf::ToString() const {
  if (IsFalse()) return "FALSE";
  if (IsTrue()) return "TRUE";
  std::string out;
  for (size_t i = 0; i < disjuncts.size(); ++i) {
    if (i) out += " || ";
    out += "(";
    for (size_t j = 0; j < disjuncts[i].size(); ++j) {
      if (j) out += " && ";
      out += AtomText(disjuncts[i][j]);
    }
    out += ")";
  }
  return out;
}

std::optional<Dnf> And(const Dnf& a, const Dnf& b, size_t max_disjuncts) {
  if (a.IsFalse() || b.IsFalse()) return Dnf::False();
  if (a.disjuncts.size() * b.disjuncts.size() > max_disjuncts) return std::nullopt;
  Dnf out;
  for (const auto& x : a.disjuncts) {
    for (const auto& y : b.disjuncts) {
      Conjunction c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.disjuncts.push_back(std::move(c));
    }
  }
  return out;
}

std::optional<Dnf> ToDnf(const lang::ExprPtr& cond, bool polarity, size_t max_disjuncts) {
  const lang::Expr& e = *cond;
  if (e.kind == lang::ExprKind::kBoolLit) return e.bool_value == polarity ? Dnf::True() : Dnf::False();
  if (e.kind == lang::ExprKind::kUnary && e.unary_op == lang::UnaryOp::kNot) {
    return ToDnf(e.operands[0], !polarity, max_disjuncts);
  }
  if (e.kind == lang::ExprKind::kBinary &&
      (e.binary_op == lang::BinaryOp::kAnd || e.binary_op == lang::BinaryOp::kOr)) {
    auto l = ToDnf(e.operands[0], polarity, max_disjuncts);
    if (!l) return std::nullopt;
    auto r = ToDnf(e.operands[1], polarity, max_disjuncts);
    if (!r) return std::nullopt;
    // De Morgan: under negation && behaves as || and vice versa.
    const bool conj = (e.binary_op == lang::BinaryOp::kAnd) == polarity;
    return conj ? And(*l, *r, max_disjuncts) : Or(std::move(*l), *r, max_disjuncts);
  }
  if (e.kind == lang::ExprKind::kBinary && lang::IsComparison(e.binary_op)) {
    return Dnf{{Conjunction{Atom{polarity ? cond : FlipComparison(e), true}}}};
  }
  return Dnf{{Conjunction{Atom{cond, polarity}}}};
}

void PathSubstituter::Assign(int var, const lang::ExprPtr& rhs) {
  env_[static_cast<size_t>(var)] = rhs;
}

lang::ExprPtr PathSubstituter::Subst(const lang::ExprPtr& e) {
  if (e->kind == lang::ExprKind::kVarRef) {
    const auto& bound = env_[static_cast<size_t>(e->var)];
    if (!bound) {
      // Member not assigned on this path: its value is not a function of
      // the record. Poison the reference; only fatal if a condition uses it.
      auto poison = std::make_shared<lang::Expr>(*e);
      poison->var = -1;
      return poison;
    }
    return bound;
  }
  if (e->operands.empty()) return e;
  auto out = std::make_shared<lang::Expr>(*e);
  out->id = -1;
  for (auto& op : out->operands) op = Subst(op);
  return out;
}

std::optional<Dnf> PathSubstituter::PathCondition(const analysis::Cfg& cfg, const analysis::CfgPath& path,
                                                  int target_stmt, size_t max_disjuncts) {
  env_.assign(info_.vars.size(), nullptr);
  auto param = [&](int slot, const char* name, int norm_slot) {
    auto ref = std::make_shared<lang::Expr>();
    ref->kind = lang::ExprKind::kVarRef;
    ref->text = name;
    ref->var = norm_slot;
    ref->type = info_.vars[static_cast<size_t>(slot)].type;
    env_[static_cast<size_t>(slot)] = ref;
  };
  param(info_.key_var, "k", 0);
  param(info_.value_var, "v", 1);

  const analysis::StmtPos& target = cfg.PositionOf(target_stmt);
  Dnf acc = Dnf::True();
  size_t next_cond = 0;
  for (size_t i = 0; i < path.blocks.size(); ++i) {
    const analysis::BasicBlock& blk = cfg.blocks[static_cast<size_t>(path.blocks[i])];
    const bool last = i + 1 == path.blocks.size();
    size_t upto = blk.stmts.size();
    if (last && target.index >= 0) upto = static_cast<size_t>(target.index);
    for (size_t j = 0; j < upto; ++j) {
      const lang::Stmt& s = *blk.stmts[j];
      if (s.kind != lang::StmtKind::kLet && s.kind != lang::StmtKind::kAssign) continue;
      auto rhs = Subst(s.expr);
      if (TreeSize(*rhs, max_nodes_) > max_nodes_) return std::nullopt;
      Assign(s.var, rhs);
    }
    if (last || blk.branch == nullptr) continue;
    const analysis::PathCond& pc = path.conds[next_cond++];
    auto cond = Subst(pc.branch->expr);
    if (TreeSize(*cond, max_nodes_) > max_nodes_) return std::nullopt;
    bool poisoned = false;
    lang::ForEachExpr(cond, [&](const lang::Expr& x) {
      if (x.kind == lang::ExprKind::kVarRef && x.var < 0) poisoned = true;
    });
    if (poisoned) return std::nullopt;
    auto part = ToDnf(cond, pc.polarity, max_disjuncts);
    if (!part) return std::nullopt;
    auto next = And(acc, *part, max_disjuncts);
    if (!next) return std::nullopt;
    acc = std::move(*next);
  }
  return acc;
}

}  // namespace manimal::detectors
