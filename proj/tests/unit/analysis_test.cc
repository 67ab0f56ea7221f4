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

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "manimal/analysis/cfg.h"
#include "manimal/analysis/paths.h"
#include "manimal/analysis/reaching_defs.h"
#include "manimal/analysis/usedef.h"
#include "manimal/lang/parser.h"
#include "manimal/lang/typecheck.h"
#include "random_jobs.h"

namespace manimal::analysis {
namespace {

using lang::Stmt;
using lang::StmtKind;

lang::TypedJob Compile(const std::string& map_body, const std::string& members = "") {
  return lang::Typecheck(lang::ParseJob(
      "schema WebPages key str { url: str; rank: i32; content: str; }\njob J on WebPages {\n" + members +
      " map(k, v) {\n" + map_body + "\n}\n reduce(k, vs) { emit(k, count(vs)); }\n}\n"));
}

std::vector<const Stmt*> Find(const lang::StmtList& body, StmtKind kind) {
  std::vector<const Stmt*> out;
  lang::ForEachStmt(body, [&](const Stmt& s) {
    if (s.kind == kind) out.push_back(&s);
  });
  return out;
}

// Independent cycle count: edges that close a cycle during DFS from entry.
int DfsBackEdges(const Cfg& cfg) {
  std::vector<int> state(cfg.blocks.size(), 0);
  int back = 0;
  std::function<void(int)> dfs = [&](int b) {
    state[static_cast<size_t>(b)] = 1;
    for (const auto& e : cfg.blocks[static_cast<size_t>(b)].succs) {
      if (state[static_cast<size_t>(e.to)] == 1) {
        ++back;
      } else if (state[static_cast<size_t>(e.to)] == 0) {
        dfs(e.to);
      }
    }
    state[static_cast<size_t>(b)] = 2;
  };
  dfs(cfg.entry);
  return back;
}

void ExpectWellFormed(const Cfg& cfg) {
  for (const auto& b : cfg.blocks) {
    if (b.id != cfg.entry) { EXPECT_FALSE(b.preds.empty()) << "block " << b.id; }
    if (b.id != cfg.exit) { EXPECT_FALSE(b.succs.empty()) << "block " << b.id; }
    // A branch, if any, ends the block; plain blocks fall through once.
    if (b.branch == nullptr && b.id != cfg.exit) { EXPECT_EQ(b.succs.size(), 1u); }
  }
}

TEST(Cfg, RankFilterIsADiamond) {
  auto t = Compile("if (v.rank > 1) emit(k, 1);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  EXPECT_EQ(cfg.blocks.size(), 4u);
  ExpectWellFormed(cfg);
  EXPECT_EQ(cfg.NumBackEdges(), 0);
  const auto* emit = Find(t.spec.map.body, StmtKind::kEmit)[0];
  const auto* cond = Find(t.spec.map.body, StmtKind::kIf)[0];
  EXPECT_NE(cfg.PositionOf(emit->id).block, cfg.PositionOf(cond->id).block);
  EXPECT_EQ(cfg.PositionOf(cond->id).index, -1);
  EXPECT_NE(cfg.ToDot().find("digraph"), std::string::npos);
}

TEST(Cfg, EmptyBody) {
  auto t = Compile("");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ASSERT_EQ(cfg.blocks.size(), 2u);
  ASSERT_EQ(cfg.blocks[static_cast<size_t>(cfg.entry)].succs.size(), 1u);
  EXPECT_EQ(cfg.blocks[static_cast<size_t>(cfg.entry)].succs[0].to, cfg.exit);
}

TEST(Cfg, StraightLineMerged) {
  auto t = Compile("let a = 1; let b = a + 1; log(b); emit(k, b);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  std::set<int> blocks;
  lang::ForEachStmt(t.spec.map.body, [&](const Stmt& s) { blocks.insert(cfg.PositionOf(s.id).block); });
  EXPECT_EQ(blocks.size(), 1u);
}

TEST(Cfg, WhileLoopHasOneBackEdge) {
  auto t = Compile("let i = 0; while (i < 3) { i = i + 1; } emit(k, i);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ExpectWellFormed(cfg);
  EXPECT_EQ(cfg.NumBackEdges(), 1);
  EXPECT_EQ(DfsBackEdges(cfg), 1);
}

TEST(Cfg, RandomProgramsWellFormed) {
  for (int i = 0; i < 100; ++i) {
    workload::Rng rng(300 + static_cast<uint64_t>(i));
    const auto schema = testing::RandomSchema(rng);
    testing::RandomJobOptions o;
    o.loops = true;
    auto t = lang::Typecheck(lang::ParseJob(testing::RandomJobSource(rng, schema, o)));
    Cfg cfg = BuildCfg(t.spec.map.body);
    ExpectWellFormed(cfg);
    int loops = 0;
    lang::ForEachStmt(t.spec.map.body, [&](const Stmt& s) { loops += s.kind == StmtKind::kWhile; });
    EXPECT_EQ(cfg.NumBackEdges(), loops);
    EXPECT_EQ(DfsBackEdges(cfg), loops);
  }
}

std::set<int> ReachingIds(const ReachingDefs& rd, int stmt, int var) {
  std::set<int> out;
  for (int d : rd.Reaching(stmt, var)) out.insert(rd.defs()[static_cast<size_t>(d)].stmt->id);
  return out;
}

TEST(ReachingDefs, Diamond) {
  auto t = Compile("let x = 1; if (v.rank > 0) { x = 2; } emit(k, x);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  const auto* let = Find(t.spec.map.body, StmtKind::kLet)[0];
  const auto* assign = Find(t.spec.map.body, StmtKind::kAssign)[0];
  const auto* emit = Find(t.spec.map.body, StmtKind::kEmit)[0];
  EXPECT_EQ(ReachingIds(rd, emit->id, let->var), (std::set<int>{let->id, assign->id}));
}

TEST(ReachingDefs, KillingDefinition) {
  auto t = Compile("let x = 1; x = 2; emit(k, x);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  const auto* assign = Find(t.spec.map.body, StmtKind::kAssign)[0];
  const auto* emit = Find(t.spec.map.body, StmtKind::kEmit)[0];
  EXPECT_EQ(ReachingIds(rd, emit->id, assign->var), (std::set<int>{assign->id}));
}

TEST(ReachingDefs, LoopCarriedDefinition) {
  auto t = Compile("let i = 0; while (i < 3) { i = i + 1; } emit(k, i);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  const auto* let = Find(t.spec.map.body, StmtKind::kLet)[0];
  const auto* assign = Find(t.spec.map.body, StmtKind::kAssign)[0];
  const auto* loop = Find(t.spec.map.body, StmtKind::kWhile)[0];
  EXPECT_EQ(ReachingIds(rd, loop->id, let->var), (std::set<int>{let->id, assign->id}));
  EXPECT_EQ(ReachingIds(rd, assign->id, let->var), (std::set<int>{let->id, assign->id}));
}

// Brute force: walk every entry-to-use path and keep the last definition.
std::set<int> PathOracle(const Cfg& cfg, const Stmt& use, int var, size_t* paths) {
  const StmtPos target = cfg.PositionOf(use.id);
  std::set<int> out;
  std::vector<int> path;
  std::function<void(int)> walk = [&](int b) {
    path.push_back(b);
    if (b == target.block) {
      ++*paths;
      int last = -1;
      for (size_t i = 0; i < path.size(); ++i) {
        const auto& blk = cfg.blocks[static_cast<size_t>(path[i])];
        size_t upto = blk.stmts.size();
        if (i + 1 == path.size() && target.index >= 0) upto = static_cast<size_t>(target.index);
        for (size_t j = 0; j < upto; ++j) {
          const Stmt& s = *blk.stmts[j];
          if ((s.kind == StmtKind::kLet || s.kind == StmtKind::kAssign) && s.var == var) last = s.id;
        }
      }
      if (last >= 0) out.insert(last);
    }
    for (const auto& e : cfg.blocks[static_cast<size_t>(b)].succs) walk(e.to);
    path.pop_back();
  };
  walk(cfg.entry);
  return out;
}

TEST(ReachingDefs, AgreesWithPathEnumeration) {
  size_t checked = 0;
  for (int i = 0; i < 150; ++i) {
    workload::Rng rng(900 + static_cast<uint64_t>(i));
    const auto schema = testing::RandomSchema(rng);
    testing::RandomJobOptions o;
    o.max_stmts = 8;
    auto t = lang::Typecheck(lang::ParseJob(testing::RandomJobSource(rng, schema, o)));
    Cfg cfg = BuildCfg(t.spec.map.body);
    ASSERT_EQ(cfg.NumBackEdges(), 0);
    ReachingDefs rd(cfg, t.map_info);
    lang::ForEachStmt(t.spec.map.body, [&](const Stmt& s) {
      std::set<int> vars;
      for (const auto& e : StmtExprs(s)) {
        lang::ForEachExpr(e, [&](const lang::Expr& x) {
          if (x.kind == lang::ExprKind::kVarRef && x.var >= 0 &&
              t.map_info.vars[static_cast<size_t>(x.var)].kind == lang::VarKind::kLocal) {
            vars.insert(x.var);
          }
        });
      }
      for (int var : vars) {
        size_t paths = 0;
        const auto oracle = PathOracle(cfg, s, var, &paths);
        if (paths > 10000) continue;
        EXPECT_EQ(ReachingIds(rd, s.id, var), oracle) << "stmt " << s.id;
        ++checked;
      }
    });
  }
  EXPECT_GT(checked, 200u);
}

TEST(UseDef, EmitConstantLeaves) {
  auto t = Compile("if (v.rank > 1) emit(k, 1);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  UseDefBuilder b(cfg, rd, t.map_info);
  const UseDefDag dag = b.Build(*Find(t.spec.map.body, StmtKind::kEmit)[0]);
  std::multiset<std::pair<DagNodeKind, std::string>> leaves;
  for (const auto& n : dag.nodes) {
    if (n.children.empty() && n.kind != DagNodeKind::kUse) leaves.insert({n.kind, n.label});
  }
  EXPECT_EQ(leaves, (std::multiset<std::pair<DagNodeKind, std::string>>{{DagNodeKind::kParam, "k"},
                                                                         {DagNodeKind::kConstant, "1"}}));
  EXPECT_TRUE(IsFunc(dag));
}

TEST(UseDef, ChainThroughLocals) {
  auto t = Compile("let a = v.rank; let b = a + 1; emit(k, b);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  UseDefBuilder builder(cfg, rd, t.map_info);
  const auto lets = Find(t.spec.map.body, StmtKind::kLet);
  const UseDefDag dag = builder.Build(*Find(t.spec.map.body, StmtKind::kEmit)[0]);
  // Follow b -> a -> v.rank from the root.
  auto child_of = [&](int node, DagNodeKind kind, int stmt) -> int {
    for (int c : dag.nodes[static_cast<size_t>(node)].children) {
      const auto& n = dag.nodes[static_cast<size_t>(c)];
      if (n.kind == kind && (stmt < 0 || n.stmt_id == stmt)) return c;
    }
    return -1;
  };
  const int b = child_of(dag.root, DagNodeKind::kDef, lets[1]->id);
  ASSERT_GE(b, 0);
  const int a = child_of(b, DagNodeKind::kDef, lets[0]->id);
  ASSERT_GE(a, 0);
  const int p = child_of(a, DagNodeKind::kParam, -1);
  ASSERT_GE(p, 0);
  EXPECT_EQ(dag.nodes[static_cast<size_t>(p)].label, "v.rank");
  EXPECT_EQ(dag.Statements().count(lets[0]->id), 1u);
  EXPECT_EQ(dag.Statements().count(lets[1]->id), 1u);
  EXPECT_TRUE(IsFunc(dag));
  EXPECT_FALSE(dag.ToText().empty());
}

TEST(UseDef, MemberLeafIsNotFunctional) {
  auto t = Compile("numMapsRun = numMapsRun + 1; if (v.rank > 1 || numMapsRun > 200) emit(k, 1);",
                   " members { numMapsRun: i64 = 0; }\n");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  UseDefBuilder b(cfg, rd, t.map_info);
  const UseDefDag dag = b.Build(*Find(t.spec.map.body, StmtKind::kIf)[0]);
  EXPECT_TRUE(dag.HasLeaf(DagNodeKind::kMember));
  bool named = false;
  for (const auto& n : dag.nodes) named |= n.kind == DagNodeKind::kMember && n.label == "numMapsRun";
  EXPECT_TRUE(named);
  EXPECT_FALSE(IsFunc(dag));
}

TEST(UseDef, RankConditionIsFunctional) {
  auto t = Compile("if (v.rank > 1) emit(k, 1);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  UseDefBuilder b(cfg, rd, t.map_info);
  EXPECT_TRUE(IsFunc(b.Build(*Find(t.spec.map.body, StmtKind::kIf)[0])));
}

TEST(UseDef, ImpureBuiltinIsNotFunctional) {
  auto t = Compile("if (table_get(tb, v.url) == 1) emit(k, 1);", " members { tb: table; }\n");
  Cfg cfg = BuildCfg(t.spec.map.body);
  ReachingDefs rd(cfg, t.map_info);
  UseDefBuilder b(cfg, rd, t.map_info);
  EXPECT_FALSE(IsFunc(b.Build(*Find(t.spec.map.body, StmtKind::kIf)[0])));
}

TEST(UseDef, IsFuncMonotoneUnderExtension) {
  for (int i = 0; i < 100; ++i) {
    workload::Rng rng(1500 + static_cast<uint64_t>(i));
    const auto schema = testing::RandomSchema(rng);
    auto t = lang::Typecheck(lang::ParseJob(testing::RandomJobSource(rng, schema, {})));
    Cfg cfg = BuildCfg(t.spec.map.body);
    ReachingDefs rd(cfg, t.map_info);
    UseDefBuilder b(cfg, rd, t.map_info);
    lang::ForEachStmt(t.spec.map.body, [&](const Stmt& s) {
      UseDefDag dag = b.Build(s);
      const bool before = IsFunc(dag);
      UseDefDag with_member = dag;
      with_member.nodes.push_back({DagNodeKind::kMember, -1, 0, "m", true, {}});
      with_member.nodes[static_cast<size_t>(with_member.root)].children.push_back(
          static_cast<int>(with_member.nodes.size()) - 1);
      EXPECT_FALSE(IsFunc(with_member));
      UseDefDag with_impure = dag;
      with_impure.nodes.push_back({DagNodeKind::kBuiltin, -1, -1, "table_get()", false, {}});
      with_impure.nodes[static_cast<size_t>(with_impure.root)].children.push_back(
          static_cast<int>(with_impure.nodes.size()) - 1);
      EXPECT_FALSE(IsFunc(with_impure));
      UseDefDag with_const = dag;
      with_const.nodes.push_back({DagNodeKind::kConstant, -1, -1, "1", true, {}});
      with_const.nodes[static_cast<size_t>(with_const.root)].children.push_back(
          static_cast<int>(with_const.nodes.size()) - 1);
      EXPECT_EQ(IsFunc(with_const), before);
    });
  }
}

TEST(Paths, RankFilterSinglePath) {
  auto t = Compile("if (v.rank > 1) emit(k, 1);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  const auto* emit = Find(t.spec.map.body, StmtKind::kEmit)[0];
  const auto paths = EnumeratePaths(cfg, emit->id);
  ASSERT_EQ(paths.size(), 1u);
  ASSERT_EQ(paths[0].conds.size(), 1u);
  EXPECT_EQ(paths[0].conds[0].branch, Find(t.spec.map.body, StmtKind::kIf)[0]);
  EXPECT_TRUE(paths[0].conds[0].polarity);
}

TEST(Paths, UnconditionalEmit) {
  auto t = Compile("let a = 1; emit(k, a);");
  Cfg cfg = BuildCfg(t.spec.map.body);
  const auto paths = EnumeratePaths(cfg, Find(t.spec.map.body, StmtKind::kEmit)[0]->id);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(paths[0].conds.empty());
}

TEST(Paths, ElseBranchRecordsNegativePolarity) {
  auto t = Compile("if (v.rank > 1) { log(k); } else { emit(k, 2); }");
  Cfg cfg = BuildCfg(t.spec.map.body);
  const auto paths = EnumeratePaths(cfg, Find(t.spec.map.body, StmtKind::kEmit)[0]->id);
  ASSERT_EQ(paths.size(), 1u);
  ASSERT_EQ(paths[0].conds.size(), 1u);
  EXPECT_FALSE(paths[0].conds[0].polarity);
}

TEST(Paths, EmitInsideLoopIsCyclic) {
  auto t = Compile("let i = 0; while (i < 2) { emit(k, i); i = i + 1; }");
  Cfg cfg = BuildCfg(t.spec.map.body);
  EXPECT_THROW(EnumeratePaths(cfg, Find(t.spec.map.body, StmtKind::kEmit)[0]->id), CyclicPathError);
}

TEST(Paths, RandomPathsAreSimpleAndEndAtTarget) {
  for (int i = 0; i < 100; ++i) {
    workload::Rng rng(2100 + static_cast<uint64_t>(i));
    const auto schema = testing::RandomSchema(rng);
    auto t = lang::Typecheck(lang::ParseJob(testing::RandomJobSource(rng, schema, {})));
    Cfg cfg = BuildCfg(t.spec.map.body);
    for (const Stmt* emit : Find(t.spec.map.body, StmtKind::kEmit)) {
      std::vector<CfgPath> paths;
      try {
        paths = EnumeratePaths(cfg, emit->id);
      } catch (const PathLimitError&) {
        continue;
      }
      EXPECT_FALSE(paths.empty());
      // Two paths may share blocks when both arms of an if are empty, so
      // identity includes the branch outcomes.
      std::set<std::pair<std::vector<int>, std::vector<int>>> distinct;
      for (const auto& p : paths) {
        ASSERT_FALSE(p.blocks.empty());
        EXPECT_EQ(p.blocks.front(), cfg.entry);
        EXPECT_EQ(p.blocks.back(), cfg.PositionOf(emit->id).block);
        EXPECT_EQ(std::set<int>(p.blocks.begin(), p.blocks.end()).size(), p.blocks.size());
        // Consecutive blocks are joined by an edge.
        for (size_t j = 1; j < p.blocks.size(); ++j) {
          bool edge = false;
          for (const auto& e : cfg.blocks[static_cast<size_t>(p.blocks[j - 1])].succs) edge |= e.to == p.blocks[j];
          EXPECT_TRUE(edge);
        }
        std::vector<int> outcomes;
        for (const auto& c : p.conds) outcomes.push_back(c.branch->id * 2 + (c.polarity ? 1 : 0));
        distinct.insert({p.blocks, outcomes});
      }
      EXPECT_EQ(distinct.size(), paths.size());
      // Determinism.
      const auto again = EnumeratePaths(cfg, emit->id);
      ASSERT_EQ(again.size(), paths.size());
      for (size_t j = 0; j < paths.size(); ++j) EXPECT_EQ(again[j].blocks, paths[j].blocks);
    }
  }
}

}  // namespace
}  // namespace manimal::analysis
