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

#include "manimal/lang/parser.h"

#include <array>
#include <set>

#include "manimal/lang/builtins.h"
#include "manimal/lang/lexer.h"

namespace manimal::lang {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  JobSpec ParseFile() {
    JobSpec job;
    while (PeekKeyword("schema")) job.schemas.push_back(ParseSchema(job.schemas));
    ExpectKeyword("job");
    job.name = ExpectIdent("job name");
    ExpectKeyword("on");
    const Token schema_tok = Peek();
    const std::string schema_name = ExpectIdent("schema name");
    bool found = false;
    for (const auto& s : job.schemas) {
      if (s.name == schema_name) {
        job.input_schema = s;
        found = true;
      }
    }
    if (!found) throw ParseError(schema_tok.loc, "unknown schema '" + schema_name + "'");
    if (AcceptKeyword("sorted")) job.sorted_output = true;
    Expect("{");
    if (PeekKeyword("members")) job.members = ParseMembers();
    ExpectKeyword("map");
    job.map = ParseFunction();
    ExpectKeyword("reduce");
    job.reduce = ParseFunction();
    Expect("}");
    ExpectEnd();
    NumberNodes(job);
    return job;
  }

  ExprPtr ParseStandaloneExpr() {
    auto e = ParseExpr();
    ExpectEnd();
    return e;
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token Next() {
    Token t = Peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool PeekPunct(std::string_view p, size_t ahead = 0) const {
    return Peek(ahead).kind == TokenKind::kPunct && Peek(ahead).text == p;
  }
  bool PeekKeyword(std::string_view k) const {
    return Peek().kind == TokenKind::kKeyword && Peek().text == k;
  }
  bool Accept(std::string_view p) {
    if (!PeekPunct(p)) return false;
    Next();
    return true;
  }
  bool AcceptKeyword(std::string_view k) {
    if (!PeekKeyword(k)) return false;
    Next();
    return true;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    const Token& t = Peek();
    std::string got = t.kind == TokenKind::kEnd ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.loc, "expected " + what + ", got " + got);
  }
  Token Expect(std::string_view p) {
    if (!PeekPunct(p)) Fail("'" + std::string(p) + "'");
    return Next();
  }
  void ExpectKeyword(std::string_view k) {
    if (!PeekKeyword(k)) Fail("'" + std::string(k) + "'");
    Next();
  }
  std::string ExpectIdent(const std::string& what) {
    if (Peek().kind != TokenKind::kIdent) Fail(what);
    return Next().text;
  }
  void ExpectEnd() {
    if (Peek().kind != TokenKind::kEnd) Fail("end of input");
  }

  FieldType ParseFieldType(bool allow_blob) {
    const Token t = Peek();
    if (t.kind == TokenKind::kKeyword) {
      if (t.text == "i32") return Next(), FieldType::kI32;
      if (t.text == "i64") return Next(), FieldType::kI64;
      if (t.text == "str") return Next(), FieldType::kStr;
      if (t.text == "blob" && allow_blob) return Next(), FieldType::kBlob;
    }
    Fail(allow_blob ? "a type (i32, i64, str, blob)" : "a key type (i32, i64, str)");
  }

  Schema ParseSchema(const std::vector<Schema>& existing) {
    ExpectKeyword("schema");
    const Token name_tok = Peek();
    Schema s;
    s.name = ExpectIdent("schema name");
    for (const auto& other : existing) {
      if (other.name == s.name) throw ParseError(name_tok.loc, "duplicate schema '" + s.name + "'");
    }
    s.key_type = FieldType::kStr;
    if (AcceptKeyword("key")) s.key_type = ParseFieldType(false);
    Expect("{");
    std::set<std::string> seen;
    while (!PeekPunct("}")) {
      const Token ft = Peek();
      Field f;
      f.name = ExpectIdent("field name");
      if (!seen.insert(f.name).second) {
        throw ParseError(ft.loc, "duplicate field '" + f.name + "' in schema " + s.name);
      }
      Expect(":");
      f.type = ParseFieldType(true);
      Expect(";");
      s.fields.push_back(std::move(f));
    }
    Expect("}");
    return s;
  }

  Value ParseLiteralValue() {
    const Token t = Peek();
    if (t.kind == TokenKind::kInt) return Next(), Value{t.int_value};
    if (t.kind == TokenKind::kString) return Next(), Value{t.text};
    if (AcceptKeyword("true")) return true;
    if (AcceptKeyword("false")) return false;
    if (Accept("-")) {
      if (Peek().kind != TokenKind::kInt) Fail("integer literal");
      const uint64_t mag = static_cast<uint64_t>(Next().int_value);
      return static_cast<int64_t>(0 - mag);
    }
    Fail("a constant");
  }

  std::vector<MemberDecl> ParseMembers() {
    ExpectKeyword("members");
    Expect("{");
    std::vector<MemberDecl> out;
    std::set<std::string> seen;
    while (!PeekPunct("}")) {
      MemberDecl m;
      m.loc = Peek().loc;
      m.name = ExpectIdent("member name");
      if (!seen.insert(m.name).second) throw ParseError(m.loc, "duplicate member '" + m.name + "'");
      Expect(":");
      if (AcceptKeyword("table")) {
        m.type = Type::Of(TypeKind::kTable);
      } else if (AcceptKeyword("bool")) {
        m.type = Type::Of(TypeKind::kBool);
      } else {
        m.type = Type::FromField(ParseFieldType(false));
      }
      if (Accept("=")) {
        const Token at = Peek();
        if (m.type.kind == TypeKind::kTable) throw ParseError(at.loc, "table members take no initializer");
        m.init = ParseLiteralValue();
      }
      Expect(";");
      out.push_back(std::move(m));
    }
    Expect("}");
    return out;
  }

  Function ParseFunction() {
    Function f;
    Expect("(");
    f.key_param = ExpectIdent("key parameter name");
    Expect(",");
    f.value_param = ExpectIdent("value parameter name");
    Expect(")");
    f.body = ParseBlock();
    return f;
  }

  StmtList ParseBlock() {
    Expect("{");
    StmtList out;
    while (!PeekPunct("}")) {
      if (Peek().kind == TokenKind::kEnd) Fail("'}'");
      out.push_back(ParseStmt());
    }
    Expect("}");
    return out;
  }

  StmtList ParseBranch() {
    if (PeekPunct("{")) return ParseBlock();
    StmtList one;
    one.push_back(ParseStmt());
    return one;
  }

  StmtPtr ParseStmt() {
    auto s = std::make_shared<Stmt>();
    s->loc = Peek().loc;
    if (AcceptKeyword("let")) {
      s->kind = StmtKind::kLet;
      s->target = ExpectIdent("variable name");
      Expect("=");
      s->expr = ParseExpr();
      Expect(";");
    } else if (AcceptKeyword("if")) {
      s->kind = StmtKind::kIf;
      Expect("(");
      s->expr = ParseExpr();
      Expect(")");
      s->body = ParseBranch();
      if (AcceptKeyword("else")) s->else_body = ParseBranch();
    } else if (AcceptKeyword("while")) {
      s->kind = StmtKind::kWhile;
      Expect("(");
      s->expr = ParseExpr();
      Expect(")");
      s->body = ParseBranch();
    } else if (AcceptKeyword("emit")) {
      s->kind = StmtKind::kEmit;
      Expect("(");
      s->expr = ParseExpr();
      Expect(",");
      s->value = ParseExpr();
      Expect(")");
      Expect(";");
    } else if (AcceptKeyword("log")) {
      s->kind = StmtKind::kLog;
      Expect("(");
      s->expr = ParseExpr();
      Expect(")");
      Expect(";");
    } else if (Peek().kind == TokenKind::kIdent && PeekPunct("=", 1)) {
      s->kind = StmtKind::kAssign;
      s->target = Next().text;
      Next();
      s->expr = ParseExpr();
      Expect(";");
    } else {
      s->kind = StmtKind::kExpr;
      s->expr = ParseExpr();
      Expect(";");
    }
    return s;
  }

  // Precedence levels, loosest first.
  ExprPtr ParseExpr() { return ParseOr(); }

  bool StartsOperand() const {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kIdent:
      case TokenKind::kInt:
      case TokenKind::kString: return true;
      case TokenKind::kKeyword: return t.text == "true" || t.text == "false";
      case TokenKind::kPunct: return t.text == "(" || t.text == "!" || t.text == "-";
      case TokenKind::kEnd: return false;
    }
    return false;
  }

  ExprPtr MakeBinary(BinaryOp op, const Token& op_tok, ExprPtr lhs, ExprPtr (Parser::*next)()) {
    if (!StartsOperand()) {
      throw ParseError(op_tok.loc, "dangling operator '" + op_tok.text + "' has no right operand");
    }
    auto rhs = (this->*next)();
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::kBinary;
    e->binary_op = op;
    e->loc = op_tok.loc;
    e->operands = {std::move(lhs), std::move(rhs)};
    return e;
  }

  template <size_t N>
  ExprPtr ParseLevel(const std::array<std::pair<std::string_view, BinaryOp>, N>& ops,
                     ExprPtr (Parser::*next)()) {
    auto lhs = (this->*next)();
    for (;;) {
      bool matched = false;
      for (const auto& [spelling, op] : ops) {
        if (PeekPunct(spelling)) {
          const Token op_tok = Next();
          lhs = MakeBinary(op, op_tok, std::move(lhs), next);
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  ExprPtr ParseOr() {
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 1> kOps{{{"||", BinaryOp::kOr}}};
    return ParseLevel(kOps, &Parser::ParseAnd);
  }
  ExprPtr ParseAnd() {
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 1> kOps{{{"&&", BinaryOp::kAnd}}};
    return ParseLevel(kOps, &Parser::ParseEquality);
  }
  ExprPtr ParseEquality() {
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 2> kOps{
        {{"==", BinaryOp::kEq}, {"!=", BinaryOp::kNe}}};
    return ParseLevel(kOps, &Parser::ParseRelational);
  }
  ExprPtr ParseRelational() {
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 4> kOps{
        {{"<=", BinaryOp::kLe}, {">=", BinaryOp::kGe}, {"<", BinaryOp::kLt}, {">", BinaryOp::kGt}}};
    return ParseLevel(kOps, &Parser::ParseConcat);
  }
  ExprPtr ParseConcat() {
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 1> kOps{
        {{"++", BinaryOp::kConcat}}};
    return ParseLevel(kOps, &Parser::ParseAdditive);
  }
  ExprPtr ParseAdditive() {
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 2> kOps{
        {{"+", BinaryOp::kAdd}, {"-", BinaryOp::kSub}}};
    return ParseLevel(kOps, &Parser::ParseMultiplicative);
  }
  ExprPtr ParseMultiplicative() {
    static constexpr std::array<std::pair<std::string_view, BinaryOp>, 3> kOps{
        {{"*", BinaryOp::kMul}, {"/", BinaryOp::kDiv}, {"%", BinaryOp::kMod}}};
    return ParseLevel(kOps, &Parser::ParseUnary);
  }

  ExprPtr ParseUnary() {
    if (PeekPunct("!") || PeekPunct("-")) {
      const Token op_tok = Next();
      if (!StartsOperand()) {
        throw ParseError(op_tok.loc, "dangling operator '" + op_tok.text + "' has no operand");
      }
      auto e = std::make_shared<Expr>();
      e->kind = ExprKind::kUnary;
      e->unary_op = op_tok.text == "!" ? UnaryOp::kNot : UnaryOp::kNeg;
      e->loc = op_tok.loc;
      e->operands = {ParseUnary()};
      return e;
    }
    return ParsePostfix();
  }

  ExprPtr ParsePostfix() {
    auto e = ParsePrimary();
    while (PeekPunct(".")) {
      const Token dot = Next();
      auto fa = std::make_shared<Expr>();
      fa->kind = ExprKind::kFieldAccess;
      fa->loc = dot.loc;
      fa->text = ExpectIdent("field name");
      fa->operands = {std::move(e)};
      e = std::move(fa);
    }
    return e;
  }

  ExprPtr ParsePrimary() {
    const Token t = Peek();
    auto e = std::make_shared<Expr>();
    e->loc = t.loc;
    switch (t.kind) {
      case TokenKind::kInt:
        Next();
        e->kind = ExprKind::kIntLit;
        e->int_value = t.int_value;
        if (t.int_value < 0) throw ParseError(t.loc, "integer literal out of range");
        return e;
      case TokenKind::kString:
        Next();
        e->kind = ExprKind::kStrLit;
        e->text = t.text;
        return e;
      case TokenKind::kKeyword:
        if (t.text == "true" || t.text == "false") {
          Next();
          e->kind = ExprKind::kBoolLit;
          e->bool_value = t.text == "true";
          return e;
        }
        break;
      case TokenKind::kIdent:
        Next();
        if (PeekPunct("(")) {
          if (FindBuiltin(t.text) == nullptr) {
            throw ParseError(t.loc, "unknown builtin '" + t.text + "'");
          }
          Next();
          e->kind = ExprKind::kCall;
          e->text = t.text;
          if (!PeekPunct(")")) {
            e->operands.push_back(ParseExpr());
            while (Accept(",")) e->operands.push_back(ParseExpr());
          }
          Expect(")");
          return e;
        }
        e->kind = ExprKind::kVarRef;
        e->text = t.text;
        return e;
      case TokenKind::kPunct:
        if (t.text == "(") {
          Next();
          auto inner = ParseExpr();
          Expect(")");
          return inner;
        }
        break;
      case TokenKind::kEnd: break;
    }
    Fail("an expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

JobSpec ParseJob(std::string_view source) {
  Parser p(Tokenize(source));
  return p.ParseFile();
}

ExprPtr ParseExpression(std::string_view source) {
  Parser p(Tokenize(source));
  return p.ParseStandaloneExpr();
}

}  // namespace manimal::lang
