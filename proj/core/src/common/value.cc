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

#include "manimal/common/value.h"

namespace manimal {

std::string_view FieldTypeName(FieldType t) {
  switch (t) {
    case FieldType::kI32: return "i32";
    case FieldType::kI64: return "i64";
    case FieldType::kStr: return "str";
    case FieldType::kBlob: return "blob";
    case FieldType::kBool: return "bool";
    case FieldType::kToken: return "token";
  }
  return "?";
}

std::optional<FieldType> FieldTypeFromName(std::string_view name) {
  for (auto t : {FieldType::kI32, FieldType::kI64, FieldType::kStr, FieldType::kBlob,
                 FieldType::kBool, FieldType::kToken}) {
    if (FieldTypeName(t) == name) return t;
  }
  return std::nullopt;
}

bool IsIntegral(FieldType t) { return t == FieldType::kI32 || t == FieldType::kI64; }

Value DefaultValue(FieldType t) {
  switch (t) {
    case FieldType::kBool: return false;
    case FieldType::kStr:
    case FieldType::kBlob: return std::string();
    default: return int64_t{0};
  }
}

std::string_view CodecName(Codec c) {
  switch (c) {
    case Codec::kPlain: return "plain";
    case Codec::kDelta: return "delta";
    case Codec::kDict: return "dict";
  }
  return "?";
}

std::optional<Codec> CodecFromName(std::string_view name) {
  for (Codec c : {Codec::kPlain, Codec::kDelta, Codec::kDict}) {
    if (CodecName(c) == name) return c;
  }
  return std::nullopt;
}

std::string ValueToString(const Value& v) {
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* i = std::get_if<int64_t>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

std::optional<int> RecordLayout::FieldIndex(std::string_view field) const {
  if (field == kKeyField) return -1;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].name == field) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<FieldType> RecordLayout::TypeOf(std::string_view field) const {
  auto idx = FieldIndex(field);
  if (!idx) return std::nullopt;
  return *idx < 0 ? key_type : fields[static_cast<size_t>(*idx)].type;
}

}  // namespace manimal
