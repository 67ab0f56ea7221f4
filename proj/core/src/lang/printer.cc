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

#include "manimal/lang/printer.h"

namespace manimal::lang {

namespace {

// Binding strength; higher binds tighter.
int Precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kBinary:
      switch (e.binary_op) {
        case BinaryOp::kOr: return 1;
        case BinaryOp::kAnd: return 2;
        case BinaryOp::kEq:
        case BinaryOp::kNe: return 3;
        case BinaryOp::kLt:
        case BinaryOp::kLe:
        case BinaryOp::kGt:
        case BinaryOp::kGe: return 4;
        case BinaryOp::kConcat: return 5;
        case BinaryOp::kAdd:
        case BinaryOp::kSub: return 6;
        case BinaryOp::kMul:
        case BinaryOp::kDiv:
        case BinaryOp::kMod: return 7;
      }
      return 0;
    case ExprKind::kUnary: return 8;
    case ExprKind::kIntLit: return e.int_value < 0 ? 8 : 10;
    case ExprKind::kFieldAccess: return 9;
    default: return 10;
  }
}

std::string Wrap(const Expr& e, bool parens) {
  std::string s = PrintExpr(e);
  return parens ? "(" + s + ")" : s;
}

std::string Indent(int n) { return std::string(static_cast<size_t>(n) * 2, ' '); }

std::string TypeSpelling(const Type& t) { return t.ToString(); }

std::string LiteralSpelling(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return QuoteString(*s);
  return ValueToString(v);
}

void PrintStmt(const Stmt& s, int indent, std::string& out);

void PrintBlock(const StmtList& body, int indent, std::string& out) {
  out += "{\n";
  for (const auto& s : body) PrintStmt(*s, indent + 1, out);
  out += Indent(indent) + "}";
}

void PrintStmt(const Stmt& s, int indent, std::string& out) {
  out += Indent(indent);
  switch (s.kind) {
    case StmtKind::kLet: out += "let " + s.target + " = " + PrintExpr(*s.expr) + ";\n"; return;
    case StmtKind::kAssign: out += s.target + " = " + PrintExpr(*s.expr) + ";\n"; return;
    case StmtKind::kEmit:
      out += "emit(" + PrintExpr(*s.expr) + ", " + PrintExpr(*s.value) + ");\n";
      return;
    case StmtKind::kExpr: out += PrintExpr(*s.expr) + ";\n"; return;
    case StmtKind::kLog: out += "log(" + PrintExpr(*s.expr) + ");\n"; return;
    case StmtKind::kWhile:
      out += "while (" + PrintExpr(*s.expr) + ") ";
      PrintBlock(s.body, indent, out);
      out += "\n";
      return;
    case StmtKind::kIf:
      out += "if (" + PrintExpr(*s.expr) + ") ";
      PrintBlock(s.body, indent, out);
      if (!s.else_body.empty()) {
        out += " else ";
        PrintBlock(s.else_body, indent, out);
      }
      out += "\n";
      return;
  }
}

}  // namespace

std::string QuoteString(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\0': out += "\\0"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string PrintExpr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kIntLit:
      if (e.int_value < 0) {
        // Parsed trees never hold negative literals; keep the value readable.
        return "-" + std::to_string(0 - static_cast<uint64_t>(e.int_value));
      }
      return std::to_string(e.int_value);
    case ExprKind::kStrLit: return QuoteString(e.text);
    case ExprKind::kBoolLit: return e.bool_value ? "true" : "false";
    case ExprKind::kTokenLit: return "token(" + std::to_string(e.int_value) + ")";
    case ExprKind::kVarRef: return e.text;
    case ExprKind::kFieldAccess:
      return Wrap(*e.operands[0], Precedence(*e.operands[0]) < 9) + "." + e.text;
    case ExprKind::kUnary: {
      const Expr& x = *e.operands[0];
      std::string inner = Wrap(x, Precedence(x) < 8);
      // Avoid "--1" style runs that would read back as one token.
      if (e.unary_op == UnaryOp::kNeg) return "-" + (inner.starts_with("-") ? " " + inner : inner);
      return "!" + inner;
    }
    case ExprKind::kBinary: {
      const int p = Precedence(e);
      const Expr& l = *e.operands[0];
      const Expr& r = *e.operands[1];
      return Wrap(l, Precedence(l) < p) + " " + BinaryOpSpelling(e.binary_op) + " " +
             Wrap(r, Precedence(r) <= p);
    }
    case ExprKind::kCall: {
      std::string out = e.text + "(";
      for (size_t i = 0; i < e.operands.size(); ++i) {
        if (i) out += ", ";
        out += PrintExpr(*e.operands[i]);
      }
      return out + ")";
    }
  }
  return "";
}

std::string PrintStmts(const StmtList& body, int indent) {
  std::string out;
  for (const auto& s : body) PrintStmt(*s, indent, out);
  return out;
}

std::string PrintStmt(const Stmt& s, int indent) {
  std::string out;
  PrintStmt(s, indent, out);
  return out;
}

std::string PrintJob(const JobSpec& job) {
  std::string out;
  for (const auto& s : job.schemas) {
    out += "schema " + s.name + " key " + std::string(FieldTypeName(s.key_type)) + " {\n";
    for (const auto& f : s.fields) out += "  " + f.name + ": " + std::string(FieldTypeName(f.type)) + ";\n";
    out += "}\n\n";
  }
  out += "job " + job.name + " on " + job.input_schema.name + (job.sorted_output ? " sorted" : "") + " {\n";
  if (!job.members.empty()) {
    out += "  members {\n";
    for (const auto& m : job.members) {
      out += "    " + m.name + ": " + TypeSpelling(m.type);
      if (m.init) out += " = " + LiteralSpelling(*m.init);
      out += ";\n";
    }
    out += "  }\n";
  }
  out += "  map(" + job.map.key_param + ", " + job.map.value_param + ") ";
  PrintBlock(job.map.body, 1, out);
  out += "\n  reduce(" + job.reduce.key_param + ", " + job.reduce.value_param + ") ";
  PrintBlock(job.reduce.body, 1, out);
  out += "\n}\n";
  return out;
}

}  // namespace manimal::lang
