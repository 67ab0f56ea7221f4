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
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "manimal/lang/typecheck.h"

namespace manimal::engine {

using EmitFn = std::function<void(Value&& key, Value&& value)>;
using LogFn = std::function<void(const std::string& line)>;

struct InterpreterOptions {
  /// Statements one map() or reduce() invocation may execute.
  uint64_t step_limit = 10'000'000;
};

using Table = std::unordered_map<std::string, int64_t>;

/// Runtime value: a scalar, or a reference to a record, a value stream or
/// a member table.
using RtValue = std::variant<bool, int64_t, std::string, const Record*, const std::vector<Value>*, Table*>;

/// Executes one function body of a typed job. Member variables live in the
/// task, so each task sees a fresh copy (as separate mapper instances do).
class Task {
 public:
  Task(const lang::TypedJob& job, bool reduce, EmitFn emit, LogFn log, InterpreterOptions options = {});

  /// One map() call.
  void Map(const Value& key, const Record& record);
  /// One reduce() call.
  void Reduce(const Value& key, const std::vector<Value>& values);

  /// Evaluates a bool expression over (key, record) without running a body.
  bool Test(const lang::Expr& cond, const Value& key, const Record& record);

  uint64_t invocations() const { return invocations_; }

 private:
  void Invoke(const lang::Function& fn);
  void Exec(const lang::StmtList& body);
  void ExecStmt(const lang::Stmt& s);
  RtValue Eval(const lang::Expr& e);
  int64_t EvalInt(const lang::Expr& e) { return std::get<int64_t>(Eval(e)); }
  RtValue Call(const lang::Expr& e);

  const lang::TypedJob& job_;
  const lang::FunctionInfo& info_;
  bool reduce_;
  EmitFn emit_;
  LogFn log_;
  InterpreterOptions options_;
  std::vector<RtValue> slots_;
  std::vector<std::unique_ptr<Table>> tables_;
  uint64_t steps_ = 0;
  int stmt_ = -1;
  uint64_t invocations_ = 0;
};

/// Evaluates a condition checked with TypecheckCondition over (k, v).
bool EvalCondition(const lang::ExprPtr& cond, const RecordLayout& schema, const Value& key, const Record& record);

/// Converts a runtime scalar back to a storable value.
Value ToValue(const RtValue& v);

}  // namespace manimal::engine
