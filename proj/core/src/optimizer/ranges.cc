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

#include "manimal/optimizer/ranges.h"

#include <algorithm>
#include <limits>

#include "manimal/storage/key_codec.h"

namespace manimal::optimizer {

namespace {

using lang::BinaryOp;
using lang::Expr;
using lang::ExprKind;

bool IsFieldRef(const Expr& e, std::string_view field) {
  if (field == kKeyField) return e.kind == ExprKind::kVarRef && e.text == "k";
  return e.kind == ExprKind::kFieldAccess && e.text == field && e.operands[0]->kind == ExprKind::kVarRef &&
         e.operands[0]->text == "v";
}

std::optional<Value> ConstantOf(const Expr& e) {
  if (e.kind == ExprKind::kIntLit) return Value{e.int_value};
  if (e.kind == ExprKind::kStrLit) return Value{e.text};
  if (e.kind == ExprKind::kUnary && e.unary_op == lang::UnaryOp::kNeg &&
      e.operands[0]->kind == ExprKind::kIntLit) {
    return Value{static_cast<int64_t>(0 - static_cast<uint64_t>(e.operands[0]->int_value))};
  }
  return std::nullopt;
}

// Bytes-domain interval; bounds absent = infinite.
struct Interval {
  std::optional<std::string> lo;
  std::optional<std::string> hi;
  bool empty = false;

  void Intersect(const Interval& o) {
    if (o.empty) empty = true;
    if (o.lo && (!lo || *o.lo > *lo)) lo = o.lo;
    if (o.hi && (!hi || *o.hi < *hi)) hi = o.hi;
    if (lo && hi && *lo >= *hi) empty = true;
  }
};

std::optional<Interval> IntAtom(BinaryOp op, int64_t c, FieldType type) {
  const int64_t dmin = type == FieldType::kI32 ? std::numeric_limits<int32_t>::min()
                                               : std::numeric_limits<int64_t>::min();
  const int64_t dmax = type == FieldType::kI32 ? std::numeric_limits<int32_t>::max()
                                               : std::numeric_limits<int64_t>::max();
  // Inclusive [a, b] over int64, then clamp to the field's domain.
  int64_t a = std::numeric_limits<int64_t>::min();
  int64_t b = std::numeric_limits<int64_t>::max();
  bool empty = false;
  switch (op) {
    case BinaryOp::kLt:
      if (c == std::numeric_limits<int64_t>::min()) empty = true; else b = c - 1;
      break;
    case BinaryOp::kLe: b = c; break;
    case BinaryOp::kGt:
      if (c == std::numeric_limits<int64_t>::max()) empty = true; else a = c + 1;
      break;
    case BinaryOp::kGe: a = c; break;
    case BinaryOp::kEq: a = b = c; break;
    default: return std::nullopt;
  }
  a = std::max(a, dmin);
  b = std::min(b, dmax);
  Interval iv;
  if (empty || a > b) {
    iv.empty = true;
    return iv;
  }
  if (a != dmin) iv.lo = storage::EncodeKey(Value{a}, type);
  if (b != dmax) iv.hi = storage::EncodeKey(Value{b + 1}, type);
  return iv;
}

std::optional<Interval> StrAtom(BinaryOp op, const std::string& c) {
  Interval iv;
  const std::string succ = c + std::string(1, '\0');  // smallest string above c
  switch (op) {
    case BinaryOp::kLt: iv.hi = c; break;
    case BinaryOp::kLe: iv.hi = succ; break;
    case BinaryOp::kGt: iv.lo = succ; break;
    case BinaryOp::kGe: iv.lo = c; break;
    case BinaryOp::kEq:
      iv.lo = c;
      iv.hi = succ;
      break;
    default: return std::nullopt;
  }
  return iv;
}

// Interval implied by one atom on `field`, or nullopt if it says nothing.
std::optional<Interval> AtomInterval(const detectors::Atom& atom, std::string_view field, FieldType type) {
  if (!atom.positive) return std::nullopt;
  const Expr& e = *atom.expr;
  if (e.kind != ExprKind::kBinary || !lang::IsComparison(e.binary_op)) return std::nullopt;
  BinaryOp op = e.binary_op;
  std::optional<Value> c;
  if (IsFieldRef(*e.operands[0], field)) {
    c = ConstantOf(*e.operands[1]);
  } else if (IsFieldRef(*e.operands[1], field)) {
    c = ConstantOf(*e.operands[0]);
    op = lang::MirrorComparison(op);
  }
  if (!c) return std::nullopt;
  if (IsIntegral(type) && type != FieldType::kToken && type != FieldType::kBool) {
    if (!std::holds_alternative<int64_t>(*c)) return std::nullopt;
    return IntAtom(op, std::get<int64_t>(*c), type);
  }
  if (type == FieldType::kStr && std::holds_alternative<std::string>(*c)) {
    return StrAtom(op, std::get<std::string>(*c));
  }
  return std::nullopt;
}

}  // namespace

std::optional<KeyRangeSet> DnfToRanges(const detectors::Dnf& dnf, std::string_view field,
                                       const RecordLayout& schema) {
  const auto type = schema.TypeOf(field);
  if (!type || *type == FieldType::kBlob) return std::nullopt;
  KeyRangeSet out;
  for (const auto& conj : dnf.disjuncts) {
    Interval acc;
    bool constrained = false;
    for (const auto& atom : conj) {
      auto iv = AtomInterval(atom, field, *type);
      if (!iv) continue;
      constrained = true;
      acc.Intersect(*iv);
    }
    if (!constrained) return std::nullopt;
    if (!acc.empty) out.push_back(KeyRange{acc.lo, acc.hi});
  }
  return Normalize(std::move(out));
}

}  // namespace manimal::optimizer
