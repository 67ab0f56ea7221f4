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

#include <optional>
#include <string>
#include <vector>

#include "manimal/analysis/paths.h"
#include "manimal/lang/typecheck.h"

namespace manimal::detectors {

/// Boolean atom of a condition, over the normalized parameters `k` and `v`.
/// Comparisons are always positive (negation flips the operator).
struct Atom {
  lang::ExprPtr expr;
  bool positive = true;
};

using Conjunction = std::vector<Atom>;

/// Disjunctive normal form. No disjuncts is FALSE; one empty disjunct is
/// TRUE.
struct Dnf {
  std::vector<Conjunction> disjuncts;

  static Dnf True() { return Dnf{{Conjunction{}}}; }
  static Dnf False() { return Dnf{}; }
  bool IsFalse() const { return disjuncts.empty(); }
  bool IsTrue() const;
  std::string ToString() const;
};

/// Pushes negations inward and distributes && over ||. Returns nullopt if
/// the result would exceed `max_disjuncts`.
std::optional<Dnf> ToDnf(const lang::ExprPtr& cond, bool polarity, size_t max_disjuncts);
std::optional<Dnf> And(const Dnf& a, const Dnf& b, size_t max_disjuncts);

/// Rewrites the atoms of an expression so that parameters appear as `k`
/// (slot 0) and `v` (slot 1) and locals are replaced by their symbolic
/// values along one CFG path.
class PathSubstituter {
 public:
  PathSubstituter(const lang::FunctionInfo& info, size_t max_nodes) : info_(info), max_nodes_(max_nodes) {}

  /// Symbolically executes one path up to (not including) the target
  /// statement and returns the conjunction of its branch conditions, or
  /// nullopt if a substituted expression grew too large.
  std::optional<Dnf> PathCondition(const analysis::Cfg& cfg, const analysis::CfgPath& path, int target_stmt,
                                   size_t max_disjuncts);

 private:
  lang::ExprPtr Subst(const lang::ExprPtr& e);
  void Assign(int var, const lang::ExprPtr& rhs);

  const lang::FunctionInfo& info_;
  size_t max_nodes_;
  std::vector<lang::ExprPtr> env_;
};

inline constexpr size_t kMaxDisjuncts = 4096;

std::string AtomText(const Atom& a);
/// Parses "expr" or "!(expr)" back into an atom (no type annotation).
Atom AtomFromText(const std::string& text);

}  // namespace manimal::detectors
