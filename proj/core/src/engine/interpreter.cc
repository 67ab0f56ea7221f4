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

#include "manimal/engine/interpreter.h"

#include <algorithm>
#include <charconv>
#include <limits>

#include "manimal/common/error.h"

namespace manimal::engine {

using lang::BinaryOp;
using lang::Expr;
using lang::ExprKind;
using lang::Stmt;
using lang::StmtKind;
using lang::TypeKind;

namespace {

// Wrapping two's-complement arithmetic, narrowed to i32 when the static type
// says so.
int64_t Fit(int64_t v, TypeKind t) {
  return t == TypeKind::kI32 ? static_cast<int64_t>(static_cast<int32_t>(static_cast<uint32_t>(v))) : v;
}

int64_t WrapAdd(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}
int64_t WrapSub(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
}
int64_t WrapMul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}

RtValue FromValue(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* i = std::get_if<int64_t>(&v)) return *i;
  return std::get<std::string>(v);
}

int64_t ParseI64(std::string_view s) {
  int64_t out = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return 0;
  return out;
}

}  // namespace

Value ToValue(const RtValue& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  if (const auto* i = std::get_if<int64_t>(&v)) return *i;
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw JobError(-1, "non-scalar value where a scalar was expected");
}

Task::Task(const lang::TypedJob& job, bool reduce, EmitFn emit, LogFn log, InterpreterOptions options)
    : job_(job),
      info_(reduce ? job.reduce_info : job.map_info),
      reduce_(reduce),
      emit_(std::move(emit)),
      log_(std::move(log)),
      options_(options) {
  slots_.resize(info_.vars.size(), int64_t{0});
  const auto& members = job_.spec.members;
  for (size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    if (m.type.kind == TypeKind::kTable) {
      tables_.push_back(std::make_unique<Table>());
      slots_[i] = tables_.back().get();
    } else if (m.init) {
      slots_[i] = FromValue(*m.init);
    } else {
      slots_[i] = FromValue(DefaultValue(m.type.ToField().value_or(FieldType::kI64)));
    }
  }
}

void Task::Map(const Value& key, const Record& record) {
  slots_[static_cast<size_t>(info_.key_var)] = FromValue(key);
  slots_[static_cast<size_t>(info_.value_var)] = &record;
  Invoke(job_.spec.map);
}

void Task::Reduce(const Value& key, const std::vector<Value>& values) {
  slots_[static_cast<size_t>(info_.key_var)] = FromValue(key);
  slots_[static_cast<size_t>(info_.value_var)] = &values;
  Invoke(job_.spec.reduce);
}

void Task::Invoke(const lang::Function& fn) {
  ++invocations_;
  steps_ = 0;
  stmt_ = -1;
  Exec(fn.body);
}

void Task::Exec(const lang::StmtList& body) {
  for (const auto& s : body) ExecStmt(*s);
}

void Task::ExecStmt(const Stmt& s) {
  if (++steps_ > options_.step_limit) {
    throw JobError(s.id, std::string(reduce_ ? "reduce" : "map") + " exceeded the step limit of " +
                             std::to_string(options_.step_limit));
  }
  stmt_ = s.id;
  switch (s.kind) {
    case StmtKind::kLet:
    case StmtKind::kAssign: {
      RtValue v = Eval(*s.expr);
      const TypeKind t = info_.vars[static_cast<size_t>(s.var)].type.kind;
      if (auto* i = std::get_if<int64_t>(&v)) *i = Fit(*i, t);
      slots_[static_cast<size_t>(s.var)] = std::move(v);
      break;
    }
    case StmtKind::kIf: {
      const bool c = std::get<bool>(Eval(*s.expr));
      Exec(c ? s.body : s.else_body);
      break;
    }
    case StmtKind::kWhile:
      while (std::get<bool>(Eval(*s.expr))) {
        Exec(s.body);
        stmt_ = s.id;
        if (++steps_ > options_.step_limit) {
          throw JobError(s.id, "loop exceeded the step limit of " + std::to_string(options_.step_limit));
        }
      }
      break;
    case StmtKind::kEmit: {
      Value k = ToValue(Eval(*s.expr));
      Value v = ToValue(Eval(*s.value));
      emit_(std::move(k), std::move(v));
      break;
    }
    case StmtKind::kExpr: Eval(*s.expr); break;
    case StmtKind::kLog:
      if (log_) log_(ValueToString(ToValue(Eval(*s.expr))));
      break;
  }
}

RtValue Task::Eval(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kIntLit:
    case ExprKind::kTokenLit: return e.int_value;
    case ExprKind::kStrLit: return e.text;
    case ExprKind::kBoolLit: return e.bool_value;
    case ExprKind::kVarRef: return slots_[static_cast<size_t>(e.var)];
    case ExprKind::kFieldAccess: {
      const Record* rec = std::get<const Record*>(Eval(*e.operands[0]));
      const auto idx = job_.spec.input_schema.FieldIndex(e.text);
      if (!idx || *idx < 0 || static_cast<size_t>(*idx) >= rec->values.size()) {
        throw JobError(stmt_, "record has no field " + e.text);
      }
      return FromValue(rec->values[static_cast<size_t>(*idx)]);
    }
    case ExprKind::kUnary: {
      RtValue v = Eval(*e.operands[0]);
      if (e.unary_op == lang::UnaryOp::kNot) return !std::get<bool>(v);
      return Fit(WrapSub(0, std::get<int64_t>(v)), e.type.kind);
    }
    case ExprKind::kBinary: {
      const BinaryOp op = e.binary_op;
      if (op == BinaryOp::kAnd) return std::get<bool>(Eval(*e.operands[0])) && std::get<bool>(Eval(*e.operands[1]));
      if (op == BinaryOp::kOr) return std::get<bool>(Eval(*e.operands[0])) || std::get<bool>(Eval(*e.operands[1]));
      RtValue l = Eval(*e.operands[0]);
      RtValue r = Eval(*e.operands[1]);
      if (op == BinaryOp::kConcat) return std::get<std::string>(l) + std::get<std::string>(r);
      if (lang::IsComparison(op)) {
        int c = 0;
        if (auto* li = std::get_if<int64_t>(&l)) {
          const int64_t ri = std::get<int64_t>(r);
          c = *li < ri ? -1 : (*li > ri ? 1 : 0);
        } else if (auto* ls = std::get_if<std::string>(&l)) {
          const int x = ls->compare(std::get<std::string>(r));
          c = x < 0 ? -1 : (x > 0 ? 1 : 0);
        } else {
          c = std::get<bool>(l) == std::get<bool>(r) ? 0 : 1;
        }
        switch (op) {
          case BinaryOp::kLt: return c < 0;
          case BinaryOp::kLe: return c <= 0;
          case BinaryOp::kGt: return c > 0;
          case BinaryOp::kGe: return c >= 0;
          case BinaryOp::kEq: return c == 0;
          default: return c != 0;
        }
      }
      const int64_t a = std::get<int64_t>(l);
      const int64_t b = std::get<int64_t>(r);
      int64_t out = 0;
      switch (op) {
        case BinaryOp::kAdd: out = WrapAdd(a, b); break;
        case BinaryOp::kSub: out = WrapSub(a, b); break;
        case BinaryOp::kMul: out = WrapMul(a, b); break;
        case BinaryOp::kDiv:
        case BinaryOp::kMod:
          if (b == 0) throw JobError(stmt_, "division by zero");
          if (b == -1) {
            out = op == BinaryOp::kDiv ? WrapSub(0, a) : 0;
          } else {
            out = op == BinaryOp::kDiv ? a / b : a % b;
          }
          break;
        default: break;
      }
      return Fit(out, e.type.kind);
    }
    case ExprKind::kCall: return Call(e);
  }
  return int64_t{0};
}

RtValue Task::Call(const Expr& e) {
  const std::string& n = e.text;
  auto arg = [&](size_t i) { return Eval(*e.operands[i]); };
  if (n == "len") return static_cast<int64_t>(std::get<std::string>(arg(0)).size());
  if (n == "substr") {
    const std::string s = std::get<std::string>(arg(0));
    const int64_t len = static_cast<int64_t>(s.size());
    const int64_t start = std::clamp<int64_t>(std::get<int64_t>(arg(1)), 0, len);
    const int64_t count = std::clamp<int64_t>(std::get<int64_t>(arg(2)), 0, len - start);
    return s.substr(static_cast<size_t>(start), static_cast<size_t>(count));
  }
  if (n == "contains") {
    const std::string s = std::get<std::string>(arg(0));
    return s.find(std::get<std::string>(arg(1))) != std::string::npos;
  }
  if (n == "starts_with") {
    const std::string s = std::get<std::string>(arg(0));
    return s.starts_with(std::get<std::string>(arg(1)));
  }
  if (n == "to_lower") {
    std::string s = std::get<std::string>(arg(0));
    for (char& c : s) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
  }
  if (n == "parse_i64") return ParseI64(std::get<std::string>(arg(0)));
  if (n == "to_str") return std::to_string(std::get<int64_t>(arg(0)));
  if (n == "table_put") {
    Table* t = std::get<Table*>(arg(0));
    const std::string k = std::get<std::string>(arg(1));
    const int64_t v = std::get<int64_t>(arg(2));
    (*t)[k] = v;
    return v;
  }
  if (n == "table_get") {
    Table* t = std::get<Table*>(arg(0));
    auto it = t->find(std::get<std::string>(arg(1)));
    return it == t->end() ? int64_t{0} : it->second;
  }
  if (n == "count") return static_cast<int64_t>(std::get<const std::vector<Value>*>(arg(0))->size());
  if (n == "sum") {
    int64_t total = 0;
    for (const auto& v : *std::get<const std::vector<Value>*>(arg(0))) total = WrapAdd(total, std::get<int64_t>(v));
    return total;
  }
  if (n == "at") {
    const auto* vs = std::get<const std::vector<Value>*>(arg(0));
    const int64_t i = std::get<int64_t>(arg(1));
    if (i < 0 || static_cast<uint64_t>(i) >= vs->size()) {
      throw JobError(stmt_, "at(): index " + std::to_string(i) + " outside stream of " +
                                std::to_string(vs->size()) + " values");
    }
    return FromValue((*vs)[static_cast<size_t>(i)]);
  }
  throw JobError(stmt_, "unknown builtin " + n);
}

bool Task::Test(const lang::Expr& cond, const Value& key, const Record& record) {
  slots_[static_cast<size_t>(info_.key_var)] = FromValue(key);
  slots_[static_cast<size_t>(info_.value_var)] = &record;
  steps_ = 0;
  stmt_ = -1;
  return std::get<bool>(Eval(cond));
}

bool EvalCondition(const lang::ExprPtr& cond, const RecordLayout& schema, const Value& key, const Record& record) {
  // Conditions only see k (slot 0), v (slot 1) and pure calls.
  lang::TypedJob job;
  job.spec.input_schema = schema;
  job.map_info.vars = {lang::VarInfo{"k", lang::VarKind::kParam, lang::Type::FromField(schema.key_type), -1},
                       lang::VarInfo{"v", lang::VarKind::kParam, lang::Type::Of(TypeKind::kRecord), -1}};
  job.map_info.key_var = 0;
  job.map_info.value_var = 1;
  Task t(job, false, nullptr, nullptr);
  return t.Test(*cond, key, record);
}

}  // namespace manimal::engine
