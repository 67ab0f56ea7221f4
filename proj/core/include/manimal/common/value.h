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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace manimal {

/// Physical type of a stored column. The DSL exposes i32/i64/str/blob in
/// schemas; bool appears in job outputs, token only after direct-operation
/// rewriting (a dense u32 dictionary id).
enum class FieldType : uint8_t {
  kI32 = 1,
  kI64 = 2,
  kStr = 3,
  kBlob = 4,
  kBool = 5,
  kToken = 6,
};

std::string_view FieldTypeName(FieldType t);
std::optional<FieldType> FieldTypeFromName(std::string_view name);
bool IsIntegral(FieldType t);

/// Per-column storage codec chosen by index generation.
enum class Codec : uint8_t { kPlain = 0, kDelta = 1, kDict = 2 };

std::string_view CodecName(Codec c);
std::optional<Codec> CodecFromName(std::string_view name);

/// Integers of every width (and tokens) live in int64_t; str and blob share std::string.
using Value = std::variant<bool, int64_t, std::string>;

Value DefaultValue(FieldType t);
std::string ValueToString(const Value& v);

struct Field {
  std::string name;
  FieldType type = FieldType::kI64;

  bool operator==(const Field&) const = default;
};

/// Storage-level schema: a key plus ordered value fields.
struct RecordLayout {
  std::string name;
  FieldType key_type = FieldType::kStr;
  std::vector<Field> fields;

  /// Index of a value field, or -1 for the pseudo-field "key", or nullopt.
  std::optional<int> FieldIndex(std::string_view field) const;
  std::optional<FieldType> TypeOf(std::string_view field) const;

  bool operator==(const RecordLayout&) const = default;
};

/// Name under which the record key is addressed by descriptors and specs.
inline constexpr std::string_view kKeyField = "key";

struct Record {
  Value key;
  std::vector<Value> values;

  bool operator==(const Record&) const = default;
  auto operator<=>(const Record&) const = default;
};

}  // namespace manimal
