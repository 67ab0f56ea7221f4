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

#include "manimal/lang/typecheck.h"

#include <map>

#include "manimal/lang/builtins.h"

namespace manimal::lang {

namespace {

bool BothInt(const Type& a, const Type& b) { return a.IsInt() && b.IsInt(); }

Type WidenInt(const Type& a, const Type& b) {
  return (a.kind == TypeKind::kI32 && b.kind == TypeKind::kI32) ? Type::Of(TypeKind::kI32)
                                                                : Type::Of(TypeKind::kI64);
}

/// Unifies two emit sites; integers widen, everything else must match.
bool Unify(Type& acc, const Type& t) {
  if (acc.kind == TypeKind::kUnknown) {
    acc = t;
    return true;
  }
  if (acc == t) return true;
  if (BothInt(acc, t)) {
    acc = WidenInt(acc, t);
    return true;
  }
  return false;
}

class Checker {
 public:
  Checker(const Schema& schema, const std::vector<MemberDecl>& members, bool is_reduce)
      : schema_(schema), is_reduce_(is_reduce) {
    scopes_.emplace_back();
    for (const auto& m : members) Declare(m.name, VarKind::kMember, m.type, -1);
  }

  FunctionInfo& info() { return info_; }

  int Declare(const std::string& name, VarKind kind, Type type, int decl_id) {
    info_.vars.push_back(VarInfo{name, kind, type, decl_id});
    const int slot = static_cast<int>(info_.vars.size()) - 1;
    scopes_.back()[name] = slot;
    return slot;
  }

  void DeclareParams(const Function& f, Type key, Type value) {
    if (f.key_param == f.value_param) throw TypeError(-1, "parameters must have distinct names");
    for (const auto* p : {&f.key_param, &f.value_param}) {
      if (Lookup(*p) >= 0) throw TypeError(-1, "parameter '" + *p + "' shadows a member");
    }
    info_.key_var = Declare(f.key_param, VarKind::kParam, key, -1);
    info_.value_var = Declare(f.value_param, VarKind::kParam, value, -1);
  }

  void CheckBody(StmtList& body) {
    scopes_.emplace_back();
    for (auto& s : body) CheckStmt(*s);
    scopes_.pop_back();
  }

  Type emit_key;
  Type emit_value;

  Type CheckExpr(Expr& e, int stmt) {
    e.type = Infer(e, stmt);
    return e.type;
  }

 private:
  int Lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    return -1;
  }

  void CheckStmt(Stmt& s) {
    switch (s.kind) {
      case StmtKind::kLet: {
        if (Lookup(s.target) >= 0) {
          throw TypeError(s.id, "'" + s.target + "' is already declared");
        }
        Type t = CheckExpr(*s.expr, s.id);
        if (t.kind == TypeKind::kRecord && s.expr->kind != ExprKind::kVarRef) {
          throw TypeError(s.id, "record values can only be aliased");
        }
        if (!t.IsScalar() && t.kind != TypeKind::kRecord) {
          throw TypeError(s.id, "cannot bind a value of type " + t.ToString());
        }
        s.var = Declare(s.target, VarKind::kLocal, t, s.id);
        break;
      }
      case StmtKind::kAssign: {
        const int slot = Lookup(s.target);
        if (slot < 0) throw TypeError(s.id, "assignment to undeclared '" + s.target + "'");
        const VarInfo& vi = info_.vars[static_cast<size_t>(slot)];
        if (vi.kind == VarKind::kParam) throw TypeError(s.id, "cannot assign to parameter '" + s.target + "'");
        if (vi.type.kind == TypeKind::kTable) throw TypeError(s.id, "cannot assign to a table");
        Type t = CheckExpr(*s.expr, s.id);
        if (t.kind == TypeKind::kRecord && s.expr->kind != ExprKind::kVarRef) {
          throw TypeError(s.id, "record values can only be aliased");
        }
        if (!(t == vi.type || BothInt(t, vi.type))) {
          throw TypeError(s.id, "cannot assign " + t.ToString() + " to '" + s.target + "' of type " +
                                    vi.type.ToString());
        }
        s.var = slot;
        break;
      }
      case StmtKind::kIf:
      case StmtKind::kWhile: {
        Type t = CheckExpr(*s.expr, s.id);
        if (t.kind != TypeKind::kBool) throw TypeError(s.id, "condition must be bool, got " + t.ToString());
        CheckBody(s.body);
        CheckBody(s.else_body);
        break;
      }
      case StmtKind::kEmit: {
        Type k = CheckExpr(*s.expr, s.id);
        Type v = CheckExpr(*s.value, s.id);
        if (!k.IsScalar()) throw TypeError(s.id, "emit key must be a scalar, got " + k.ToString());
        if (!v.IsScalar()) throw TypeError(s.id, "emit value must be a scalar, got " + v.ToString());
        if (!Unify(emit_key, k)) {
          throw TypeError(s.id, "emit key type " + k.ToString() + " conflicts with " + emit_key.ToString());
        }
        if (!Unify(emit_value, v)) {
          throw TypeError(s.id,
                          "emit value type " + v.ToString() + " conflicts with " + emit_value.ToString());
        }
        break;
      }
      case StmtKind::kExpr: CheckExpr(*s.expr, s.id); break;
      case StmtKind::kLog: {
        Type t = CheckExpr(*s.expr, s.id);
        if (!t.IsScalar()) throw TypeError(s.id, "log argument must be a scalar");
        break;
      }
    }
  }

  Type Infer(Expr& e, int stmt) {
    switch (e.kind) {
      case ExprKind::kIntLit: return Type::Of(TypeKind::kI64);
      case ExprKind::kStrLit: return Type::Of(TypeKind::kStr);
      case ExprKind::kBoolLit: return Type::Of(TypeKind::kBool);
      case ExprKind::kTokenLit: return Type::Of(TypeKind::kToken);
      case ExprKind::kVarRef: {
        const int slot = Lookup(e.text);
        if (slot < 0) throw TypeError(stmt, "undeclared identifier '" + e.text + "'");
        e.var = slot;
        return info_.vars[static_cast<size_t>(slot)].type;
      }
      case ExprKind::kFieldAccess: {
        Type base = CheckExpr(*e.operands[0], stmt);
        if (base.kind != TypeKind::kRecord) {
          throw TypeError(stmt, "field access ." + e.text + " on non-record " + base.ToString());
        }
        auto idx = schema_.FieldIndex(e.text);
        if (!idx || *idx < 0) throw TypeError(stmt, "schema " + schema_.name + " has no field '" + e.text + "'");
        return Type::FromField(schema_.fields[static_cast<size_t>(*idx)].type);
      }
      case ExprKind::kUnary: {
        Type t = CheckExpr(*e.operands[0], stmt);
        if (e.unary_op == UnaryOp::kNot) {
          if (t.kind != TypeKind::kBool) throw TypeError(stmt, "'!' needs bool, got " + t.ToString());
          return t;
        }
        if (!t.IsInt()) throw TypeError(stmt, "unary '-' needs an integer, got " + t.ToString());
        return t;
      }
      case ExprKind::kBinary: return InferBinary(e, stmt);
      case ExprKind::kCall: {
        const BuiltinInfo* b = FindBuiltin(e.text);
        if (!b) throw TypeError(stmt, "unknown builtin '" + e.text + "'");
        if (b->reduce_only && !is_reduce_) throw TypeError(stmt, e.text + "() is only available in reduce");
        std::vector<Type> args;
        for (auto& a : e.operands) args.push_back(CheckExpr(*a, stmt));
        auto r = BuiltinResultType(*b, args);
        if (auto* msg = std::get_if<std::string>(&r)) throw TypeError(stmt, *msg);
        return std::get<Type>(r);
      }
    }
    return {};
  }

  Type InferBinary(Expr& e, int stmt) {
    Type l = CheckExpr(*e.operands[0], stmt);
    Type r = CheckExpr(*e.operands[1], stmt);
    const std::string op = BinaryOpSpelling(e.binary_op);
    auto clash = [&]() {
      return TypeError(stmt, "operator '" + op + "' cannot combine " + l.ToString() + " and " + r.ToString());
    };
    switch (e.binary_op) {
      case BinaryOp::kAdd:
      case BinaryOp::kSub:
      case BinaryOp::kMul:
      case BinaryOp::kDiv:
      case BinaryOp::kMod:
        if (!BothInt(l, r)) throw clash();
        return WidenInt(l, r);
      case BinaryOp::kLt:
      case BinaryOp::kLe:
      case BinaryOp::kGt:
      case BinaryOp::kGe:
        if (BothInt(l, r) || (l.kind == TypeKind::kStr && r.kind == TypeKind::kStr)) {
          return Type::Of(TypeKind::kBool);
        }
        throw clash();
      case BinaryOp::kEq:
      case BinaryOp::kNe:
        if (BothInt(l, r)) return Type::Of(TypeKind::kBool);
        if (l == r && (l.kind == TypeKind::kStr || l.kind == TypeKind::kBool || l.kind == TypeKind::kToken)) {
          return Type::Of(TypeKind::kBool);
        }
        throw clash();
      case BinaryOp::kAnd:
      case BinaryOp::kOr:
        if (l.kind == TypeKind::kBool && r.kind == TypeKind::kBool) return l;
        throw clash();
      case BinaryOp::kConcat:
        if (l.kind == TypeKind::kStr && r.kind == TypeKind::kStr) return l;
        throw clash();
    }
    throw clash();
  }

  const Schema& schema_;
  bool is_reduce_;
  FunctionInfo info_;
  std::vector<std::map<std::string, int>> scopes_;
};

void CheckMembers(const std::vector<MemberDecl>& members) {
  for (const auto& m : members) {
    if (!m.init) continue;
    const Value& v = *m.init;
    const bool ok = (m.type.IsInt() && std::holds_alternative<int64_t>(v)) ||
                    (m.type.kind == TypeKind::kStr && std::holds_alternative<std::string>(v)) ||
                    (m.type.kind == TypeKind::kBool && std::holds_alternative<bool>(v));
    if (!ok) throw TypeError(-1, "initializer of member '" + m.name + "' does not match " + m.type.ToString());
  }
}

}  // namespace

RecordLayout TypedJob::OutputLayout() const {
  RecordLayout out;
  out.name = spec.name + "_output";
  out.key_type = out_key.ToField().value_or(FieldType::kStr);
  out.fields = {Field{"value", out_value.ToField().value_or(FieldType::kI64)}};
  return out;
}

TypedJob Typecheck(const JobSpec& job) {
  TypedJob typed;
  typed.spec = CloneJob(job);
  JobSpec& spec = typed.spec;
  CheckMembers(spec.members);
  for (const auto& f : spec.input_schema.fields) {
    if (f.type == FieldType::kBool) throw TypeError(-1, "schema fields cannot be bool");
  }

  Checker map_checker(spec.input_schema, spec.members, /*is_reduce=*/false);
  map_checker.DeclareParams(spec.map, Type::FromField(spec.input_schema.key_type), Type::Of(TypeKind::kRecord));
  map_checker.CheckBody(spec.map.body);
  typed.map_info = std::move(map_checker.info());
  typed.map_out_key = map_checker.emit_key.kind == TypeKind::kUnknown ? Type::Of(TypeKind::kStr)
                                                                       : map_checker.emit_key;
  typed.map_out_value = map_checker.emit_value.kind == TypeKind::kUnknown ? Type::Of(TypeKind::kI64)
                                                                           : map_checker.emit_value;

  Checker reduce_checker(spec.input_schema, spec.members, /*is_reduce=*/true);
  reduce_checker.DeclareParams(spec.reduce, typed.map_out_key,
                               Type{TypeKind::kStream, typed.map_out_value.kind});
  reduce_checker.CheckBody(spec.reduce.body);
  typed.reduce_info = std::move(reduce_checker.info());
  typed.out_key = reduce_checker.emit_key.kind == TypeKind::kUnknown ? Type::Of(TypeKind::kStr)
                                                                      : reduce_checker.emit_key;
  typed.out_value = reduce_checker.emit_value.kind == TypeKind::kUnknown ? Type::Of(TypeKind::kI64)
                                                                          : reduce_checker.emit_value;
  return typed;
}

void TypecheckCondition(const ExprPtr& cond, const Schema& schema) {
  Checker c(schema, {}, /*is_reduce=*/false);
  Function params;
  params.key_param = "k";
  params.value_param = "v";
  c.DeclareParams(params, Type::FromField(schema.key_type), Type::Of(TypeKind::kRecord));
  Type t = c.CheckExpr(*cond, -1);
  if (t.kind != TypeKind::kBool) throw TypeError(-1, "condition must be bool, got " + t.ToString());
  ForEachExpr(cond, [](const Expr& e) {
    if (e.kind == ExprKind::kCall && !FindBuiltin(e.text)->pure) {
      throw TypeError(-1, "condition calls impure builtin " + e.text);
    }
  });
}

}  // namespace manimal::lang
