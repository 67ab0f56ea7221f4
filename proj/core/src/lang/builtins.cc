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

#include "manimal/lang/builtins.h"

#include <array>

namespace manimal::lang {

namespace {

constexpr std::array<BuiltinInfo, 12> kBuiltins = {{
    {"len", 1, true, false, false},
    {"substr", 3, true, false, false},
    {"contains", 2, true, false, false},
    {"starts_with", 2, true, false, false},
    {"to_lower", 1, true, false, false},
    {"parse_i64", 1, true, false, false},
    {"to_str", 1, true, true, false},
    {"table_put", 3, false, false, false},
    {"table_get", 2, false, false, false},
    {"count", 1, true, false, true},
    {"sum", 1, true, false, true},
    {"at", 2, true, false, true},
}};

bool Is(const Type& t, TypeKind k) { return t.kind == k; }

}  // namespace

const BuiltinInfo* FindBuiltin(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::span<const BuiltinInfo> AllBuiltins() { return kBuiltins; }

std::variant<Type, std::string> BuiltinResultType(const BuiltinInfo& b, std::span<const Type> args) {
  if (static_cast<int>(args.size()) != b.arity) {
    return std::string(b.name) + " expects " + std::to_string(b.arity) + " argument(s)";
  }
  const std::string_view n = b.name;
  auto bad = [&](int i, const char* want) {
    return std::string(n) + ": argument " + std::to_string(i + 1) + " must be " + want + ", got " +
           args[static_cast<size_t>(i)].ToString();
  };

  if (n == "len") {
    if (!Is(args[0], TypeKind::kStr) && !Is(args[0], TypeKind::kBlob)) return bad(0, "str or blob");
    return Type::Of(TypeKind::kI64);
  }
  if (n == "substr") {
    if (!Is(args[0], TypeKind::kStr)) return bad(0, "str");
    if (!args[1].IsInt()) return bad(1, "an integer");
    if (!args[2].IsInt()) return bad(2, "an integer");
    return Type::Of(TypeKind::kStr);
  }
  if (n == "contains" || n == "starts_with") {
    if (!Is(args[0], TypeKind::kStr)) return bad(0, "str");
    if (!Is(args[1], TypeKind::kStr)) return bad(1, "str");
    return Type::Of(TypeKind::kBool);
  }
  if (n == "to_lower") {
    if (!Is(args[0], TypeKind::kStr)) return bad(0, "str");
    return Type::Of(TypeKind::kStr);
  }
  if (n == "parse_i64") {
    if (!Is(args[0], TypeKind::kStr)) return bad(0, "str");
    return Type::Of(TypeKind::kI64);
  }
  if (n == "to_str") {
    if (!args[0].IsInt()) return bad(0, "an integer");
    return Type::Of(TypeKind::kStr);
  }
  if (n == "table_put") {
    if (!Is(args[0], TypeKind::kTable)) return bad(0, "a table member");
    if (!Is(args[1], TypeKind::kStr)) return bad(1, "str");
    if (!args[2].IsInt()) return bad(2, "an integer");
    return Type::Of(TypeKind::kI64);
  }
  if (n == "table_get") {
    if (!Is(args[0], TypeKind::kTable)) return bad(0, "a table member");
    if (!Is(args[1], TypeKind::kStr)) return bad(1, "str");
    return Type::Of(TypeKind::kI64);
  }
  if (n == "count") {
    if (!Is(args[0], TypeKind::kStream)) return bad(0, "a value stream");
    return Type::Of(TypeKind::kI64);
  }
  if (n == "sum") {
    if (!Is(args[0], TypeKind::kStream) ||
        (args[0].elem != TypeKind::kI32 && args[0].elem != TypeKind::kI64)) {
      return bad(0, "an integer stream");
    }
    return Type::Of(TypeKind::kI64);
  }
  if (n == "at") {
    if (!Is(args[0], TypeKind::kStream)) return bad(0, "a value stream");
    if (!args[1].IsInt()) return bad(1, "an integer");
    return Type::Of(args[0].elem);
  }
  return std::string("unknown builtin ") + std::string(n);
}

}  // namespace manimal::lang
