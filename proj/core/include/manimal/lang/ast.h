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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "manimal/common/error.h"
#include "manimal/common/value.h"

namespace manimal::lang {

/// Static type of an expression. Streams carry their element kind.
enum class TypeKind : uint8_t {
  kUnknown,
  kI32,
  kI64,
  kStr,
  kBlob,
  kBool,
  kToken,
  kRecord,
  kStream,
  kTable,
};

struct Type {
  TypeKind kind = TypeKind::kUnknown;
  TypeKind elem = TypeKind::kUnknown;

  bool operator==(const Type&) const = default;

  bool IsInt() const { return kind == TypeKind::kI32 || kind == TypeKind::kI64; }
  bool IsScalar() const;
  std::string ToString() const;

  static Type Of(TypeKind k) { return Type{k, TypeKind::kUnknown}; }
  static Type FromField(FieldType t);
  std::optional<FieldType> ToField() const;
};

/// Schemas are the storage layouts; their value fields are restricted to
/// i32/i64/str/blob at parse time.
using Schema = RecordLayout;

enum class ExprKind : uint8_t {
  kIntLit,
  kStrLit,
  kBoolLit,
  kTokenLit,  // produced only by the direct-operation rewrite
  kVarRef,
  kFieldAccess,
  kUnary,
  kBinary,
  kCall,
};

enum class UnaryOp : uint8_t { kNot, kNeg };

enum class BinaryOp : uint8_t {
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kAnd,
  kOr,
  kConcat,
};

const char* BinaryOpSpelling(BinaryOp op);
bool IsComparison(BinaryOp op);
/// The comparison equivalent to !(a op b), e.g. < becomes >=.
BinaryOp NegateComparison(BinaryOp op);
/// The comparison with operands swapped, e.g. a < b becomes b > a.
BinaryOp MirrorComparison(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  ExprKind kind = ExprKind::kIntLit;
  int id = -1;
  SourceLoc loc;

  int64_t int_value = 0;  // int and token literals
  bool bool_value = false;
  std::string text;  // string literal, variable, field or builtin name
  UnaryOp unary_op = UnaryOp::kNot;
  BinaryOp binary_op = BinaryOp::kAdd;
  std::vector<ExprPtr> operands;  // unary [x], binary [l, r], field access [base], call args

  // Filled in by the typechecker.
  Type type;
  int var = -1;
};

enum class StmtKind : uint8_t { kLet, kAssign, kIf, kWhile, kEmit, kExpr, kLog };

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;
using StmtList = std::vector<StmtPtr>;

struct Stmt {
  StmtKind kind = StmtKind::kExpr;
  int id = -1;
  SourceLoc loc;

  std::string target;  // let / assign
  int var = -1;        // resolved target slot
  ExprPtr expr;        // rhs, condition, expression, log argument, or emit key
  ExprPtr value;       // emit value
  StmtList body;       // if-then or loop body
  StmtList else_body;
};

struct MemberDecl {
  std::string name;
  Type type;
  std::optional<Value> init;
  SourceLoc loc;
};

struct Function {
  std::string key_param;
  std::string value_param;
  StmtList body;
};

struct JobSpec {
  std::string name;
  std::vector<Schema> schemas;  // every schema declared in the file
  Schema input_schema;
  std::vector<MemberDecl> members;
  Function map;
  Function reduce;
  bool sorted_output = false;
};

ExprPtr CloneExpr(const ExprPtr& e);
StmtPtr CloneStmt(const StmtPtr& s);
StmtList CloneStmts(const StmtList& list);
JobSpec CloneJob(const JobSpec& job);

/// Structural equality: kinds, literal values, names, operators and node ids.
/// Source locations and type annotations are ignored.
bool ExprEqual(const Expr& a, const Expr& b);
bool StmtsEqual(const StmtList& a, const StmtList& b);
bool JobEqual(const JobSpec& a, const JobSpec& b);

/// Assigns pre-order node ids over map then reduce, starting at 0.
void NumberNodes(JobSpec& job);

/// Calls f on every statement in source (pre-)order.
template <typename F>
void ForEachStmt(const StmtList& list, F&& f) {
  for (const auto& s : list) {
    f(*s);
    ForEachStmt(s->body, f);
    ForEachStmt(s->else_body, f);
  }
}

/// Calls f on every expression node under e, parents before children.
template <typename F>
void ForEachExpr(const ExprPtr& e, F&& f) {
  if (!e) return;
  f(*e);
  for (const auto& op : e->operands) ForEachExpr(op, f);
}

}  // namespace manimal::lang
