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

#include "manimal/lang/ast.h"

namespace manimal::lang {

bool Type::IsScalar() const {
  switch (kind) {
    case TypeKind::kI32:
    case TypeKind::kI64:
    case TypeKind::kStr:
    case TypeKind::kBlob:
    case TypeKind::kBool:
    case TypeKind::kToken: return true;
    default: return false;
  }
}

std::string Type::ToString() const {
  switch (kind) {
    case TypeKind::kUnknown: return "?";
    case TypeKind::kI32: return "i32";
    case TypeKind::kI64: return "i64";
    case TypeKind::kStr: return "str";
    case TypeKind::kBlob: return "blob";
    case TypeKind::kBool: return "bool";
    case TypeKind::kToken: return "token";
    case TypeKind::kRecord: return "record";
    case TypeKind::kTable: return "table";
    case TypeKind::kStream: return "stream<" + Type::Of(elem).ToString() + ">";
  }
  return "?";
}

Type Type::FromField(FieldType t) {
  switch (t) {
    case FieldType::kI32: return Of(TypeKind::kI32);
    case FieldType::kI64: return Of(TypeKind::kI64);
    case FieldType::kStr: return Of(TypeKind::kStr);
    case FieldType::kBlob: return Of(TypeKind::kBlob);
    case FieldType::kBool: return Of(TypeKind::kBool);
    case FieldType::kToken: return Of(TypeKind::kToken);
  }
  return {};
}

std::optional<FieldType> Type::ToField() const {
  switch (kind) {
    case TypeKind::kI32: return FieldType::kI32;
    case TypeKind::kI64: return FieldType::kI64;
    case TypeKind::kStr: return FieldType::kStr;
    case TypeKind::kBlob: return FieldType::kBlob;
    case TypeKind::kBool: return FieldType::kBool;
    case TypeKind::kToken: return FieldType::kToken;
    default: return std::nullopt;
  }
}

const char* BinaryOpSpelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
    case BinaryOp::kConcat: return "++";
  }
  return "?";
}

bool IsComparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe:
    case BinaryOp::kEq:
    case BinaryOp::kNe: return true;
    default: return false;
  }
}

BinaryOp NegateComparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::kLt: return BinaryOp::kGe;
    case BinaryOp::kLe: return BinaryOp::kGt;
    case BinaryOp::kGt: return BinaryOp::kLe;
    case BinaryOp::kGe: return BinaryOp::kLt;
    case BinaryOp::kEq: return BinaryOp::kNe;
    case BinaryOp::kNe: return BinaryOp::kEq;
    default: return op;
  }
}

BinaryOp MirrorComparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::kLt: return BinaryOp::kGt;
    case BinaryOp::kLe: return BinaryOp::kGe;
    case BinaryOp::kGt: return BinaryOp::kLt;
    case BinaryOp::kGe: return BinaryOp::kLe;
    default: return op;
  }
}

ExprPtr CloneExpr(const ExprPtr& e) {
  if (!e) return nullptr;
  auto copy = std::make_shared<Expr>(*e);
  for (auto& op : copy->operands) op = CloneExpr(op);
  return copy;
}

StmtPtr CloneStmt(const StmtPtr& s) {
  if (!s) return nullptr;
  auto copy = std::make_shared<Stmt>(*s);
  copy->expr = CloneExpr(s->expr);
  copy->value = CloneExpr(s->value);
  copy->body = CloneStmts(s->body);
  copy->else_body = CloneStmts(s->else_body);
  return copy;
}

StmtList CloneStmts(const StmtList& list) {
  StmtList out;
  out.reserve(list.size());
  for (const auto& s : list) out.push_back(CloneStmt(s));
  return out;
}

JobSpec CloneJob(const JobSpec& job) {
  JobSpec copy = job;
  copy.map.body = CloneStmts(job.map.body);
  copy.reduce.body = CloneStmts(job.reduce.body);
  return copy;
}

bool ExprEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.id != b.id || a.operands.size() != b.operands.size()) return false;
  switch (a.kind) {
    case ExprKind::kIntLit:
    case ExprKind::kTokenLit:
      if (a.int_value != b.int_value) return false;
      break;
    case ExprKind::kBoolLit:
      if (a.bool_value != b.bool_value) return false;
      break;
    case ExprKind::kStrLit:
    case ExprKind::kVarRef:
    case ExprKind::kFieldAccess:
    case ExprKind::kCall:
      if (a.text != b.text) return false;
      break;
    case ExprKind::kUnary:
      if (a.unary_op != b.unary_op) return false;
      break;
    case ExprKind::kBinary:
      if (a.binary_op != b.binary_op) return false;
      break;
  }
  for (size_t i = 0; i < a.operands.size(); ++i) {
    if (!ExprEqual(*a.operands[i], *b.operands[i])) return false;
  }
  return true;
}

namespace {

bool OptExprEqual(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return ExprEqual(*a, *b);
}

bool StmtEqual(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.id == b.id && a.target == b.target && OptExprEqual(a.expr, b.expr) &&
         OptExprEqual(a.value, b.value) && StmtsEqual(a.body, b.body) &&
         StmtsEqual(a.else_body, b.else_body);
}

bool MembersEqual(const std::vector<MemberDecl>& a, const std::vector<MemberDecl>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].type != b[i].type || a[i].init != b[i].init) return false;
  }
  return true;
}

int Number(const ExprPtr& e, int next) {
  if (!e) return next;
  e->id = next++;
  for (const auto& op : e->operands) next = Number(op, next);
  return next;
}

int Number(const StmtList& list, int next) {
  for (const auto& s : list) {
    s->id = next++;
    next = Number(s->expr, next);
    next = Number(s->value, next);
    next = Number(s->body, next);
    next = Number(s->else_body, next);
  }
  return next;
}

}  // namespace

bool StmtsEqual(const StmtList& a, const StmtList& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!StmtEqual(*a[i], *b[i])) return false;
  }
  return true;
}

bool JobEqual(const JobSpec& a, const JobSpec& b) {
  return a.name == b.name && a.schemas == b.schemas && a.input_schema == b.input_schema &&
         MembersEqual(a.members, b.members) && a.map.key_param == b.map.key_param &&
         a.map.value_param == b.map.value_param && a.reduce.key_param == b.reduce.key_param &&
         a.reduce.value_param == b.reduce.value_param && a.sorted_output == b.sorted_output &&
         StmtsEqual(a.map.body, b.map.body) && StmtsEqual(a.reduce.body, b.reduce.body);
}

void NumberNodes(JobSpec& job) {
  int next = Number(job.map.body, 0);
  Number(job.reduce.body, next);
}

}  // namespace manimal::lang
