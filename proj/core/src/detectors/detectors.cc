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

#include "manimal/detectors/detectors.h"

#include <algorithm>
#include <functional>

#include "manimal/optimizer/ranges.h"

namespace manimal::detectors {

namespace {

using analysis::UseDefDag;
using lang::Expr;
using lang::ExprKind;
using lang::Stmt;
using lang::StmtKind;

constexpr size_t kMaxSubstNodes = 20000;

bool HasBlobField(const RecordLayout& schema) {
  return std::any_of(schema.fields.begin(), schema.fields.end(),
                     [](const Field& f) { return f.type == FieldType::kBlob; });
}

bool IsNumeric(FieldType t) { return t == FieldType::kI32 || t == FieldType::kI64; }

// Field names read by the given statements (through any record alias).
void CollectFields(const Stmt& s, std::set<std::string>& out) {
  for (const auto& e : analysis::StmtExprs(s)) {
    lang::ForEachExpr(e, [&](const Expr& x) {
      if (x.kind == ExprKind::kFieldAccess) out.insert(x.text);
    });
  }
}

std::map<int, const Stmt*> StmtsById(const lang::StmtList& body) {
  std::map<int, const Stmt*> out;
  lang::ForEachStmt(body, [&](const Stmt& s) { out[s.id] = &s; });
  return out;
}

bool IsRecordFieldAccess(const Expr& e) {
  return e.kind == ExprKind::kFieldAccess && e.operands[0]->type.kind == lang::TypeKind::kRecord;
}

}  // namespace

std::string_view OptKindName(OptKind k) {
  switch (k) {
    case OptKind::kSelect: return "select";
    case OptKind::kProject: return "project";
    case OptKind::kDelta: return "delta";
    case OptKind::kDirectOp: return "directop";
  }
  return "?";
}

std::optional<OptKind> OptKindFromName(std::string_view name) {
  for (OptKind k : {OptKind::kSelect, OptKind::kProject, OptKind::kDelta, OptKind::kDirectOp}) {
    if (OptKindName(k) == name) return k;
  }
  return std::nullopt;
}

Codec IndexGenSpec::CodecOf(const std::string& field) const {
  auto it = codecs.find(field);
  return it == codecs.end() ? Codec::kPlain : it->second;
}

const OptimizationDescriptor* AnalysisResult::Find(OptKind k) const {
  for (const auto& d : descriptors) {
    if (d.kind == k) return &d;
  }
  return nullptr;
}

MapAnalysis::MapAnalysis(const lang::TypedJob& job)
    : job_(job), cfg_(analysis::BuildCfg(job.spec.map.body)), rd_(cfg_, job.map_info) {
  lang::ForEachStmt(job.spec.map.body, [&](const Stmt& s) {
    if (s.kind == StmtKind::kEmit) emits_.push_back(&s);
  });
}

UseDefDag MapAnalysis::UseDef(const Stmt& s) const {
  return analysis::UseDefBuilder(cfg_, rd_, job_.map_info).Build(s);
}

std::optional<Dnf> FindSelect(const MapAnalysis& a, std::string* why) {
  auto fail = [&](const std::string& reason) -> std::optional<Dnf> {
    if (why) *why = reason;
    return std::nullopt;
  };
  Dnf dnf = Dnf::False();
  std::map<int, bool> func_cache;
  PathSubstituter subst(a.job().map_info, kMaxSubstNodes);
  for (const Stmt* emit : a.emits()) {
    std::vector<analysis::CfgPath> paths;
    try {
      paths = analysis::EnumeratePaths(a.cfg(), emit->id);
    } catch (const analysis::CyclicPathError& e) {
      return fail(e.what());
    } catch (const analysis::PathLimitError& e) {
      return fail(e.what());
    }
    for (const auto& path : paths) {
      for (const auto& pc : path.conds) {
        auto it = func_cache.find(pc.branch->id);
        if (it == func_cache.end()) {
          it = func_cache.emplace(pc.branch->id, analysis::IsFunc(a.UseDef(*pc.branch))).first;
        }
        if (!it->second) {
          return fail("condition of statement " + std::to_string(pc.branch->id) + " is not functional");
        }
      }
      auto conj = subst.PathCondition(a.cfg(), path, emit->id, kMaxDisjuncts);
      if (!conj) return fail("path condition too large");
      if (dnf.disjuncts.size() + conj->disjuncts.size() > kMaxDisjuncts) return fail("too many disjuncts");
      if (conj->IsTrue()) return Dnf::True();
      dnf.disjuncts.insert(dnf.disjuncts.end(), conj->disjuncts.begin(), conj->disjuncts.end());
    }
  }
  return dnf;
}

std::set<std::string> FindProject(const MapAnalysis& a) {
  const RecordLayout& schema = a.job().spec.input_schema;
  if (HasBlobField(schema)) return {};
  const auto by_id = StmtsById(a.job().spec.map.body);
  std::set<int> relevant;  // statements on emit paths plus their branch conditions
  bool cyclic = false;
  for (const Stmt* emit : a.emits()) {
    std::vector<analysis::CfgPath> paths;
    try {
      paths = analysis::EnumeratePaths(a.cfg(), emit->id);
    } catch (const Error&) {
      cyclic = true;
      break;
    }
    const analysis::StmtPos& target = a.cfg().PositionOf(emit->id);
    for (const auto& path : paths) {
      for (size_t i = 0; i < path.blocks.size(); ++i) {
        const auto& blk = a.cfg().blocks[static_cast<size_t>(path.blocks[i])];
        const bool last = i + 1 == path.blocks.size();
        const size_t upto = last ? static_cast<size_t>(target.index) + 1 : blk.stmts.size();
        for (size_t j = 0; j < upto; ++j) relevant.insert(blk.stmts[j]->id);
        if (!last && blk.branch) relevant.insert(blk.branch->id);
      }
    }
  }

  std::set<std::string> used;
  if (cyclic) {
    lang::ForEachStmt(a.job().spec.map.body, [&](const Stmt& s) {
      if (s.kind != StmtKind::kLog) CollectFields(s, used);
    });
  } else {
    std::set<int> closure;
    for (int id : relevant) {
      const Stmt* s = by_id.at(id);
      if (s->kind == StmtKind::kLog) continue;
      for (int d : a.UseDef(*s).Statements()) closure.insert(d);
    }
    for (int id : closure) CollectFields(*by_id.at(id), used);
  }
  std::set<std::string> dropped;
  for (const auto& f : schema.fields) {
    if (!used.count(f.name)) dropped.insert(f.name);
  }
  return dropped;
}

std::set<std::string> FindDelta(const MapAnalysis& a, const std::set<std::string>& dropped) {
  const RecordLayout& schema = a.job().spec.input_schema;
  if (HasBlobField(schema)) return {};
  std::set<std::string> out;
  if (IsNumeric(schema.key_type)) out.insert(std::string(kKeyField));
  for (const auto& f : schema.fields) {
    if (IsNumeric(f.type) && !dropped.count(f.name)) out.insert(f.name);
  }
  return out;
}

std::set<std::string> FindDirectOp(const MapAnalysis& a) {
  const lang::TypedJob& job = a.job();
  const RecordLayout& schema = job.spec.input_schema;
  std::set<std::string> candidates;
  for (const auto& f : schema.fields) {
    if (f.type == FieldType::kStr) candidates.insert(f.name);
  }
  std::set<std::string> disqualified;
  std::set<std::string> used;
  std::set<std::string> emit_key_fields;
  bool all_emit_keys_plain_fields = true;

  // Walks an expression; `eq_sibling` is set when e is an operand of ==/!=.
  std::function<void(const Expr&, const Expr*)> walk = [&](const Expr& e, const Expr* eq_sibling) {
    if (IsRecordFieldAccess(e) && candidates.count(e.text)) {
      used.insert(e.text);
      const bool ok = eq_sibling != nullptr &&
                      (eq_sibling->kind == ExprKind::kStrLit ||
                       (IsRecordFieldAccess(*eq_sibling) && eq_sibling->text == e.text));
      if (!ok) disqualified.insert(e.text);
      return;
    }
    const bool eq = e.kind == ExprKind::kBinary &&
                    (e.binary_op == lang::BinaryOp::kEq || e.binary_op == lang::BinaryOp::kNe);
    for (size_t i = 0; i < e.operands.size(); ++i) {
      walk(*e.operands[i], eq ? e.operands[1 - i].get() : nullptr);
    }
  };

  lang::ForEachStmt(job.spec.map.body, [&](const Stmt& s) {
    if (s.kind == StmtKind::kEmit) {
      const Expr& key = *s.expr;
      if (IsRecordFieldAccess(key) && candidates.count(key.text)) {
        used.insert(key.text);
        emit_key_fields.insert(key.text);
      } else {
        all_emit_keys_plain_fields = false;
        walk(key, nullptr);
      }
      walk(*s.value, nullptr);
      return;
    }
    for (const auto& e : analysis::StmtExprs(s)) walk(*e, nullptr);
  });

  if (!emit_key_fields.empty()) {
    // Tokens may flow to the output only if nothing else shares the key
    // space and the reduce treats k as an opaque group id.
    bool reduce_ok = true;
    const int kvar = job.reduce_info.key_var;
    std::function<void(const Expr&)> bad_use = [&](const Expr& e) {
      if (e.kind == ExprKind::kVarRef && e.var == kvar) reduce_ok = false;
      for (const auto& op : e.operands) bad_use(*op);
    };
    lang::ForEachStmt(job.spec.reduce.body, [&](const Stmt& s) {
      if (s.kind == StmtKind::kEmit) {
        const Expr& key = *s.expr;
        if (!(key.kind == ExprKind::kVarRef && key.var == kvar)) bad_use(key);
        bad_use(*s.value);
        return;
      }
      for (const auto& e : analysis::StmtExprs(s)) bad_use(*e);
    });
    const bool ok = !job.spec.sorted_output && all_emit_keys_plain_fields && emit_key_fields.size() == 1 &&
                    reduce_ok;
    if (!ok) disqualified.insert(emit_key_fields.begin(), emit_key_fields.end());
  }

  std::set<std::string> out;
  for (const auto& f : used) {
    if (!disqualified.count(f)) out.insert(f);
  }
  return out;
}

std::vector<std::string> SargableFields(const Dnf& dnf, const RecordLayout& schema) {
  std::vector<std::string> out;
  std::vector<std::string> names = {std::string(kKeyField)};
  for (const auto& f : schema.fields) names.push_back(f.name);
  for (const auto& n : names) {
    if (optimizer::DnfToRanges(dnf, n, schema)) out.push_back(n);
  }
  return out;
}

std::vector<IndexGenSpec> SpecsFor(const std::vector<OptimizationDescriptor>& descriptors,
                                   const RecordLayout& schema) {
  const OptimizationDescriptor* sel = nullptr;
  const OptimizationDescriptor* proj = nullptr;
  const OptimizationDescriptor* delta = nullptr;
  const OptimizationDescriptor* dop = nullptr;
  for (const auto& d : descriptors) {
    if (d.kind == OptKind::kSelect && !d.candidates.empty()) sel = &d;
    if (d.kind == OptKind::kProject) proj = &d;
    if (d.kind == OptKind::kDelta) delta = &d;
    if (d.kind == OptKind::kDirectOp) dop = &d;
  }
  std::vector<std::string> all;
  for (const auto& f : schema.fields) all.push_back(f.name);
  std::vector<std::string> retained;
  for (const auto& f : all) {
    if (!proj || std::find(proj->fields.begin(), proj->fields.end(), f) == proj->fields.end()) {
      retained.push_back(f);
    }
  }
  auto in_retained = [&](const std::string& f) {
    return f == kKeyField || std::find(retained.begin(), retained.end(), f) != retained.end();
  };

  std::vector<IndexGenSpec> out;
  auto add = [&](IndexGenSpec spec) {
    if (spec.retained_fields.empty()) return;  // nothing to store
    for (const auto& s : out) {
      if (s.format == spec.format && s.index_field == spec.index_field &&
          s.retained_fields == spec.retained_fields && s.codecs == spec.codecs) {
        return;
      }
    }
    out.push_back(std::move(spec));
  };

  if (!sel && !proj && !delta && !dop) return out;
  IndexGenSpec combined;
  combined.name = "combined";
  combined.retained_fields = retained;
  if (sel) {
    combined.format = IndexFormat::kBTree;
    combined.index_field = sel->candidates.front();
  } else if (delta) {
    for (const auto& f : delta->fields) {
      if (in_retained(f)) combined.codecs[f] = Codec::kDelta;
    }
  }
  if (dop) {
    for (const auto& f : dop->fields) {
      // Ranges are computed over strings, so the index field stays plain.
      if (in_retained(f) && f != combined.index_field) combined.codecs[f] = Codec::kDict;
    }
  }
  add(combined);

  if (sel) {
    IndexGenSpec s;
    s.name = "select";
    s.format = IndexFormat::kBTree;
    s.index_field = sel->candidates.front();
    s.retained_fields = all;
    add(s);
  }
  if (proj) {
    IndexGenSpec s;
    s.name = "project";
    s.retained_fields = retained;
    add(s);
  }
  if (delta) {
    IndexGenSpec s;
    s.name = "delta";
    s.retained_fields = all;
    for (const auto& f : delta->fields) s.codecs[f] = Codec::kDelta;
    add(s);
  }
  if (dop) {
    IndexGenSpec s;
    s.name = "directop";
    s.retained_fields = all;
    for (const auto& f : dop->fields) s.codecs[f] = Codec::kDict;
    add(s);
  }
  return out;
}

AnalysisResult Analyze(const lang::TypedJob& job, const AnalyzeOptions& options) {
  AnalysisResult result;
  MapAnalysis a(job);
  const RecordLayout& schema = job.spec.input_schema;

  // Skipping or reshaping input is only sound if what the map emits, and
  // whether it emits, depends on the current record alone.
  for (const Stmt* emit : a.emits()) {
    if (!analysis::IsFunc(a.UseDef(*emit))) {
      result.safe = false;
      result.notes.push_back("emit at statement " + std::to_string(emit->id) +
                             " depends on member state or an impure call");
    }
  }
  for (const auto& blk : a.cfg().blocks) {
    if (!blk.branch) continue;
    bool feeds_emit = false;
    for (const Stmt* emit : a.emits()) {
      feeds_emit = feeds_emit || analysis::Reachable(a.cfg(), blk.id, a.cfg().PositionOf(emit->id).block);
    }
    if (feeds_emit && !analysis::IsFunc(a.UseDef(*blk.branch))) {
      result.safe = false;
      result.notes.push_back("condition at statement " + std::to_string(blk.branch->id) +
                             " depends on member state or an impure call");
    }
  }
  if (!result.safe) return result;

  bool has_log = false;
  lang::ForEachStmt(job.spec.map.body, [&](const Stmt& s) { has_log = has_log || s.kind == StmtKind::kLog; });
  if (options.safe_mode && has_log) {
    result.notes.push_back("safe mode: map writes log output, selection disabled");
  } else {
    std::string why;
    auto dnf = FindSelect(a, &why);
    if (!dnf) {
      result.notes.push_back("selection: " + why);
    } else if (dnf->IsTrue()) {
      result.notes.push_back("selection: map emits on every record");
    } else {
      OptimizationDescriptor d;
      d.kind = OptKind::kSelect;
      d.dnf = *dnf;
      d.candidates = SargableFields(*dnf, schema);
      if (d.candidates.empty()) {
        result.notes.push_back("selection: no field bounds every disjunct");
      } else {
        result.descriptors.push_back(std::move(d));
      }
    }
  }

  const auto dropped = FindProject(a);
  if (!dropped.empty()) {
    OptimizationDescriptor d;
    d.kind = OptKind::kProject;
    d.fields.assign(dropped.begin(), dropped.end());
    result.descriptors.push_back(std::move(d));
  }
  const auto delta = FindDelta(a, dropped);
  if (!delta.empty()) {
    OptimizationDescriptor d;
    d.kind = OptKind::kDelta;
    d.fields.assign(delta.begin(), delta.end());
    result.descriptors.push_back(std::move(d));
  }
  const auto direct = FindDirectOp(a);
  if (!direct.empty()) {
    OptimizationDescriptor d;
    d.kind = OptKind::kDirectOp;
    d.fields.assign(direct.begin(), direct.end());
    result.descriptors.push_back(std::move(d));
  }
  result.specs = SpecsFor(result.descriptors, schema);
  return result;
}

void ValidateDescriptors(const std::vector<OptimizationDescriptor>& descriptors, const RecordLayout& schema) {
  std::set<OptKind> seen;
  for (const auto& d : descriptors) {
    const std::string kind(OptKindName(d.kind));
    if (!seen.insert(d.kind).second) throw SpecError("duplicate " + kind + " descriptor");
    for (const auto& f : d.fields) {
      auto type = schema.TypeOf(f);
      if (!type) throw SpecError(kind + " descriptor names unknown field '" + f + "'");
      switch (d.kind) {
        case OptKind::kProject:
          if (f == kKeyField) throw SpecError("the key cannot be projected away");
          break;
        case OptKind::kDelta:
          if (!IsNumeric(*type)) throw SpecError("delta field '" + f + "' is not an integer");
          break;
        case OptKind::kDirectOp:
          if (f == kKeyField || *type != FieldType::kStr) {
            throw SpecError("directop field '" + f + "' is not a string value field");
          }
          break;
        case OptKind::kSelect: break;
      }
    }
    if (d.kind != OptKind::kSelect) continue;
    for (const auto& conj : d.dnf.disjuncts) {
      for (const auto& atom : conj) {
        try {
          lang::TypecheckCondition(atom.expr, schema);
        } catch (const TypeError& e) {
          throw SpecError(std::string("select atom '") + AtomText(atom) + "': " + e.what());
        }
      }
    }
    if (d.candidates.empty()) throw SpecError("select descriptor lists no index field");
    for (const auto& c : d.candidates) {
      if (!schema.TypeOf(c)) throw SpecError("select candidate '" + c + "' is not a field");
      if (!optimizer::DnfToRanges(d.dnf, c, schema)) {
        throw SpecError("select condition does not bound field '" + c + "'");
      }
    }
  }
}

}  // namespace manimal::detectors
