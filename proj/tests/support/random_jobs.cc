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

#include "random_jobs.h"

#include <limits>

#include "manimal/workload/benchmarks.h"

namespace manimal::testing {

namespace {

using workload::Rng;

enum class Ty { kInt, kStr, kBool };

struct Local {
  std::string name;
  Ty ty;
  bool assignable;
};

const std::vector<std::string>& StrPool() {
  static const std::vector<std::string> pool = {"", "x", "y", "xy", "yx", "abc", "X", "-3", "7"};
  return pool;
}

class JobGen {
 public:
  JobGen(Rng& rng, const RecordLayout& schema, const RandomJobOptions& o)
      : rng_(rng), schema_(schema), o_(o), key_str_(schema.key_type == FieldType::kStr) {}

  std::string Job() {
    restrict_s_ = Chance(0.2);
    out_key_ = restrict_s_ || Chance(0.5) ? Ty::kStr : Ty::kInt;
    out_val_ = Chance(0.6) ? Ty::kInt : Ty::kStr;
    const bool sorted = restrict_s_ ? Chance(0.3) : Chance(0.5);

    scopes_.emplace_back();
    std::string body;
    if (Chance(0.35)) {
      // An index-friendly guard around everything.
      body = "    if (" + Guard() + ") {\n" + Block(1, "      ", true);
      if (emits_ == 0) body += "      " + Emit() + "\n";
      body += "    }\n";
    } else {
      body = Block(0, "    ", true);
    }
    if (emits_ == 0) {
      body += Chance(0.5) ? "    if (" + Bool(2) + ") {\n      " + Emit() + "\n    }\n" : "    " + Emit() + "\n";
    }
    scopes_.pop_back();

    std::string src = workload::SchemaDecl(schema_);
    src += "job Rand on " + schema_.name + (sorted ? " sorted" : "") + " {\n";
    if (o_.members) src += "  members {\n    m: i64 = 0;\n    tb: table;\n  }\n";
    src += "  map(k, v) {\n" + body + "  }\n";
    src += "  reduce(k, vs) {\n" + Reduce() + "  }\n}\n";
    return src;
  }

 private:
  int Pick(int n) { return static_cast<int>(rng_.Range(0, n - 1)); }
  bool Chance(double p) { return rng_.Unit() < p; }

  std::vector<const Local*> LocalsOf(Ty ty, bool assignable_only) const {
    std::vector<const Local*> out;
    for (const auto& scope : scopes_) {
      for (const auto& l : scope) {
        if (l.ty == ty && (!assignable_only || l.assignable)) out.push_back(&l);
      }
    }
    return out;
  }

  std::string Fresh(const char* prefix) { return prefix + std::to_string(next_++); }

  std::string IntLeaf() {
    for (;;) {
      switch (Pick(7)) {
        case 0: {
          const int64_t lit = rng_.Range(-5, 5);
          return lit < 0 ? "(" + std::to_string(lit) + ")" : std::to_string(lit);
        }
        case 1: return "v.a";
        case 2: return "v.b";
        case 3: return "v.c";
        case 4:
          if (!key_str_) return "k";
          break;
        case 5: {
          auto ls = LocalsOf(Ty::kInt, false);
          if (!ls.empty()) return ls[static_cast<size_t>(Pick(static_cast<int>(ls.size())))]->name;
          break;
        }
        case 6:
          if (o_.members && Chance(0.5)) return "m";
          if (Chance(0.1)) return "2147483647";
          break;
      }
    }
  }

  std::string Int(int d) {
    if (d <= 0 || Chance(0.35)) return IntLeaf();
    switch (Pick(o_.members ? 7 : 6)) {
      case 0: return "(" + Int(d - 1) + " + " + Int(d - 1) + ")";
      case 1: return "(" + Int(d - 1) + " - " + Int(d - 1) + ")";
      case 2: return "(" + Int(d - 1) + " * " + Int(d - 1) + ")";
      case 3: return "(-" + Int(d - 1) + ")";
      case 4: return "len(" + Str(d - 1) + ")";
      case 5: return "parse_i64(" + Str(d - 1) + ")";
      default: return "table_get(tb, " + Str(d - 1) + ")";
    }
  }

  std::string StrLeaf() {
    for (;;) {
      switch (Pick(5)) {
        case 0: return lang_quote(StrPool()[static_cast<size_t>(Pick(static_cast<int>(StrPool().size())))]);
        case 1:
          if (!restrict_s_) return "v.s";
          break;
        case 2: return "v.t";
        case 3:
          if (key_str_) return "k";
          break;
        case 4: {
          auto ls = LocalsOf(Ty::kStr, false);
          if (!ls.empty()) return ls[static_cast<size_t>(Pick(static_cast<int>(ls.size())))]->name;
          break;
        }
      }
    }
  }

  static std::string lang_quote(const std::string& s) { return "\"" + s + "\""; }

  std::string Str(int d) {
    if (d <= 0 || Chance(0.4)) return StrLeaf();
    switch (Pick(4)) {
      case 0: return "(" + Str(d - 1) + " ++ " + Str(d - 1) + ")";
      case 1:
        return "substr(" + Str(d - 1) + ", " + std::to_string(rng_.Range(-1, 3)) + ", " +
               std::to_string(rng_.Range(-1, 3)) + ")";
      case 2: return "to_lower(" + Str(d - 1) + ")";
      default: return "to_str(" + Int(d - 1) + ")";
    }
  }

  std::string Bool(int d) {
    static const char* kCmp[] = {"<", "<=", ">", ">=", "==", "!="};
    if (d <= 0 || Chance(0.45)) {
      switch (Pick(restrict_s_ ? 7 : 6)) {
        case 0: return Chance(0.5) ? "true" : "false";
        case 1: {
          auto ls = LocalsOf(Ty::kBool, false);
          if (!ls.empty()) return ls[static_cast<size_t>(Pick(static_cast<int>(ls.size())))]->name;
          return "(" + Int(d - 1) + " " + kCmp[Pick(6)] + " " + Int(d - 1) + ")";
        }
        case 2:
        case 3: return "(" + Int(d - 1) + " " + kCmp[Pick(6)] + " " + Int(d - 1) + ")";
        case 4: return "(" + Str(d - 1) + (Chance(0.5) ? " == " : " != ") + Str(d - 1) + ")";
        case 5: return (Chance(0.5) ? "contains(" : "starts_with(") + Str(d - 1) + ", " + Str(d - 1) + ")";
        default:
          return std::string("(v.s ") + (Chance(0.5) ? "==" : "!=") + " " +
                 lang_quote(StrPool()[static_cast<size_t>(Pick(static_cast<int>(StrPool().size())))]) + ")";
      }
    }
    switch (Pick(3)) {
      case 0: return "!" + Bool(d - 1);
      case 1: return "(" + Bool(d - 1) + " && " + Bool(d - 1) + ")";
      default: return "(" + Bool(d - 1) + " || " + Bool(d - 1) + ")";
    }
  }

  std::string Guard() {
    const std::string n = std::to_string(rng_.Range(-4, 4));
    switch (Pick(5)) {
      case 0: return "v.a > " + n;
      case 1: return "v.b <= " + n;
      case 2: return key_str_ ? "k >= \"x\"" : "k >= " + n;
      case 3: return "(v.c == 1 || v.c == 3)";
      default: return "(v.a >= " + n + " && v.a < " + std::to_string(rng_.Range(0, 6)) + ")";
    }
  }

  std::string Of(Ty t, int d) {
    switch (t) {
      case Ty::kInt: return Int(d);
      case Ty::kStr: return Str(d);
      case Ty::kBool: return Bool(d);
    }
    return "";
  }

  std::string Emit() {
    ++emits_;
    const std::string key = restrict_s_ ? "v.s" : Of(out_key_, 2);
    return "emit(" + key + ", " + Of(out_val_, 2) + ");";
  }

  std::string Block(int depth, const std::string& ind, bool top) {
    const int n = top ? static_cast<int>(rng_.Range(1, o_.max_stmts)) : static_cast<int>(rng_.Range(0, o_.max_stmts / 2));
    std::string out;
    for (int i = 0; i < n; ++i) out += Stmt(depth, ind);
    return out;
  }

  std::string Nested(int depth, const std::string& ind) {
    scopes_.emplace_back();
    std::string b = Block(depth + 1, ind + "  ", false);
    scopes_.pop_back();
    return b;
  }

  std::string Stmt(int depth, const std::string& ind) {
    for (;;) {
      const int choice = Pick(9);
      switch (choice) {
        case 0:
        case 1: {
          const Ty t = static_cast<Ty>(Pick(3));
          std::string e = Of(t, 2);
          std::string name = Fresh("l");
          scopes_.back().push_back({name, t, true});
          return ind + "let " + name + " = " + e + ";\n";
        }
        case 2: {
          const Ty t = static_cast<Ty>(Pick(3));
          auto ls = LocalsOf(t, true);
          if (ls.empty()) break;
          const std::string name = ls[static_cast<size_t>(Pick(static_cast<int>(ls.size())))]->name;
          return ind + name + " = " + Of(t, 2) + ";\n";
        }
        case 3:
        case 4: {
          if (depth >= o_.max_depth) break;
          std::string s = ind + "if (" + Bool(2) + ") {\n" + Nested(depth, ind) + ind + "}";
          if (Chance(0.5)) s += " else {\n" + Nested(depth, ind) + ind + "}";
          return s + "\n";
        }
        case 5:
        case 6:
          if (depth == 0 && Chance(0.7)) break;  // keep most emits conditional
          return ind + Emit() + "\n";
        case 7:
          if (!o_.logs) break;
          return ind + "log(" + Of(static_cast<Ty>(Pick(3)), 1) + ");\n";
        case 8:
          if (o_.loops && depth < o_.max_depth && Chance(0.6)) {
            const std::string i = Fresh("i");
            std::string s = ind + "let " + i + " = 0;\n";
            scopes_.back().push_back({i, Ty::kInt, false});
            s += ind + "while (" + i + " < " + std::to_string(rng_.Range(0, 3)) + ") {\n";
            s += Nested(depth, ind);
            s += ind + "  " + i + " = " + i + " + 1;\n" + ind + "}\n";
            return s;
          }
          if (o_.members) {
            return Chance(0.5) ? ind + "m = m + 1;\n"
                               : ind + "table_put(tb, " + Str(1) + ", " + Int(1) + ");\n";
          }
          break;
      }
    }
  }

  std::string Reduce() {
    const char* kEmitAll =
        "    let i = 0;\n    while (i < count(vs)) {\n      emit(k, at(vs, i));\n      i = i + 1;\n    }\n";
    if (out_val_ == Ty::kInt) {
      switch (Pick(3)) {
        case 0: return "    emit(k, sum(vs));\n";
        case 1: return "    emit(k, count(vs));\n";
        default: return kEmitAll;
      }
    }
    return Chance(0.7) ? kEmitAll : "    emit(k, count(vs));\n";
  }

  Rng& rng_;
  const RecordLayout& schema_;
  RandomJobOptions o_;
  bool key_str_;
  bool restrict_s_ = false;
  Ty out_key_ = Ty::kInt;
  Ty out_val_ = Ty::kInt;
  std::vector<std::vector<Local>> scopes_;
  int next_ = 0;
  int emits_ = 0;
};

int64_t SmallOrExtreme(Rng& rng, int64_t lo, int64_t hi, int64_t min, int64_t max) {
  const double p = rng.Unit();
  if (p < 0.03) return min;
  if (p < 0.06) return max;
  return rng.Range(lo, hi);
}

}  // namespace

RecordLayout RandomSchema(Rng& rng) {
  RecordLayout l;
  l.name = "R";
  l.key_type = rng.Unit() < 0.5 ? FieldType::kI64 : FieldType::kStr;
  l.fields = {{"a", FieldType::kI32}, {"b", FieldType::kI64}, {"s", FieldType::kStr},
              {"t", FieldType::kStr}, {"c", FieldType::kI32}};
  return l;
}

std::string RandomJobSource(Rng& rng, const RecordLayout& schema, const RandomJobOptions& options) {
  return JobGen(rng, schema, options).Job();
}

Record RandomRecord(Rng& rng, const RecordLayout& schema) {
  constexpr int64_t kI32Min = std::numeric_limits<int32_t>::min();
  constexpr int64_t kI32Max = std::numeric_limits<int32_t>::max();
  constexpr int64_t kI64Min = std::numeric_limits<int64_t>::min();
  constexpr int64_t kI64Max = std::numeric_limits<int64_t>::max();
  auto str = [&] { return StrPool()[static_cast<size_t>(rng.Range(0, static_cast<int64_t>(StrPool().size()) - 1))]; };
  auto value_of = [&](FieldType t, const std::string& name) -> Value {
    switch (t) {
      case FieldType::kI32:
        return name == "c" ? rng.Range(0, 3) : SmallOrExtreme(rng, -6, 6, kI32Min, kI32Max);
      case FieldType::kI64: return SmallOrExtreme(rng, -8, 8, kI64Min, kI64Max);
      case FieldType::kStr: return str();
      case FieldType::kBlob: return std::string(static_cast<size_t>(rng.Range(0, 8)), 'b');
      case FieldType::kBool: return rng.Unit() < 0.5;
      case FieldType::kToken: return rng.Range(0, 5);
    }
    return int64_t{0};
  };
  Record r;
  r.key = value_of(schema.key_type, "key");
  for (const auto& f : schema.fields) r.values.push_back(value_of(f.type, f.name));
  return r;
}

std::vector<Record> RandomRecords(Rng& rng, const RecordLayout& schema, size_t n) {
  std::vector<Record> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(RandomRecord(rng, schema));
  return out;
}

}  // namespace manimal::testing
