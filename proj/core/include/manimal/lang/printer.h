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

#include <string>

#include "manimal/lang/ast.h"

namespace manimal::lang {

/// Source text for an expression with the minimal parentheses needed to
/// reparse to the same tree. Token literals print as `token(N)`, which is
/// not valid source; they only exist in rewritten jobs.
std::string PrintExpr(const Expr& e);

std::string QuoteString(const std::string& s);

/// Pretty-prints a whole job file (all schemas, then the job).
std::string PrintJob(const JobSpec& job);

std::string PrintStmts(const StmtList& body, int indent);
std::string PrintStmt(const Stmt& s, int indent);

}  // namespace manimal::lang
