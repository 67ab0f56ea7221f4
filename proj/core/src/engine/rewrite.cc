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

#include "manimal/engine/rewrite.h"

#include "manimal/common/error.h"

namespace manimal::engine {

using lang::BinaryOp;
using lang::Expr;
using lang::ExprKind;
using lang::ExprPtr;

namespace {

const std::string* DictField(const ExprPtr& e, const std::map<std::string, storage::Dictionary>& dicts) {
  if (e->kind != ExprKind::kFieldAccess || !dicts.count(e->text)) return nullptr;
  return &e->text;
}

void RewriteExpr(const ExprPtr& e, const std::map<std::string, storage::Dictionary>& dicts) {
  if (!e) return;
  for (const auto& op : e->operands) RewriteExpr(op, dicts);
  if (e->kind != ExprKind::kBinary || (e->binary_op != BinaryOp::kEq && e->binary_op != BinaryOp::kNe)) return;
  for (int side = 0; side < 2; ++side) {
    const ExprPtr& field = e->operands[static_cast<size_t>(side)];
    ExprPtr& lit = e->operands[static_cast<size_t>(1 - side)];
    const std::string* name = DictField(field, dicts);
    if (!name || lit->kind != ExprKind::kStrLit) continue;
    auto token = std::make_shared<Expr>(*lit);
    token->kind = ExprKind::kTokenLit;
    token->int_value = dicts.at(*name).EncodeOrAbsent(lit->text);
    token->text.clear();
    lit = token;
  }
}

void RewriteBody(const lang::StmtList& body, const std::map<std::string, storage::Dictionary>& dicts) {
  for (const auto& s : body) {
    RewriteExpr(s->expr, dicts);
    RewriteExpr(s->value, dicts);
    RewriteBody(s->body, dicts);
    RewriteBody(s->else_body, dicts);
  }
}

std::optional<std::string> EmitKeyField(const lang::StmtList& body,
                                        const std::map<std::string, storage::Dictionary>& dicts) {
  std::optional<std::string> out;
  lang::ForEachStmt(body, [&](const lang::Stmt& s) {
    if (s.kind == lang::StmtKind::kEmit) {
      if (const std::string* f = DictField(s.expr, dicts)) out = *f;
    }
  });
  return out;
}

}  // namespace

RewrittenJob RewriteForDirectOp(const lang::TypedJob& job,
                                const std::map<std::string, storage::Dictionary>& dictionaries) {
  RewrittenJob out;
  lang::JobSpec spec = lang::CloneJob(job.spec);
  for (const auto& [name, dict] : dictionaries) {
    auto idx = spec.input_schema.FieldIndex(name);
    if (!idx || *idx < 0) throw RewriteError("direct-op field '" + name + "' is not a schema field");
    auto& f = spec.input_schema.fields[static_cast<size_t>(*idx)];
    if (f.type != FieldType::kStr) throw RewriteError("direct-op field '" + name + "' is not a string");
    f.type = FieldType::kToken;
  }
  RewriteBody(spec.map.body, dictionaries);
  try {
    out.job = lang::Typecheck(spec);
  } catch (const TypeError& e) {
    throw RewriteError(std::string("direct-operation rewrite does not typecheck: ") + e.what());
  }
  if (out.job.out_key.kind == lang::TypeKind::kToken) {
    if (spec.sorted_output) throw RewriteError("sorted output cannot be keyed by tokens");
    out.output_key_field = EmitKeyField(spec.map.body, dictionaries);
    if (!out.output_key_field) throw RewriteError("token output key has no source field");
  }
  if (out.job.out_value.kind == lang::TypeKind::kToken) {
    throw RewriteError("direct-operation rewrite would emit token values");
  }
  return out;
}

}  // namespace manimal::engine
