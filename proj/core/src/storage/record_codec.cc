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

#include "manimal/storage/record_codec.h"

#include <limits>

#include "manimal/common/error.h"

namespace manimal::storage {

void EncodeValue(ByteWriter& w, const Value& v, FieldType type) {
  switch (type) {
    case FieldType::kI32: w.U32(static_cast<uint32_t>(static_cast<int32_t>(std::get<int64_t>(v)))); return;
    case FieldType::kI64: w.U64(static_cast<uint64_t>(std::get<int64_t>(v))); return;
    case FieldType::kToken: w.U32(static_cast<uint32_t>(std::get<int64_t>(v))); return;
    case FieldType::kBool: w.U8(std::get<bool>(v) ? 1 : 0); return;
    case FieldType::kStr:
    case FieldType::kBlob: w.Str32(std::get<std::string>(v)); return;
  }
}

Value DecodeValue(ByteReader& r, FieldType type) {
  switch (type) {
    case FieldType::kI32: return static_cast<int64_t>(static_cast<int32_t>(r.U32()));
    case FieldType::kI64: return static_cast<int64_t>(r.U64());
    case FieldType::kToken: return static_cast<int64_t>(r.U32());
    case FieldType::kBool: {
      const uint64_t at = r.offset();
      const uint8_t b = r.U8();
      if (b > 1) throw DecodeError("bad bool byte at offset " + std::to_string(at));
      return b == 1;
    }
    case FieldType::kStr:
    case FieldType::kBlob: return std::string(r.Str32());
  }
  return {};
}

size_t EncodedSize(const Value& v, FieldType type) {
  switch (type) {
    case FieldType::kI32:
    case FieldType::kToken: return 4;
    case FieldType::kI64: return 8;
    case FieldType::kBool: return 1;
    case FieldType::kStr:
    case FieldType::kBlob: return 4 + std::get<std::string>(v).size();
  }
  return 0;
}

std::string EncodeValues(const RecordLayout& layout, const std::vector<Value>& values) {
  std::string out;
  ByteWriter w(&out);
  for (size_t i = 0; i < layout.fields.size(); ++i) EncodeValue(w, values[i], layout.fields[i].type);
  return out;
}

std::string EncodeRecord(const RecordLayout& layout, const Record& record) {
  std::string out;
  ByteWriter w(&out);
  EncodeValue(w, record.key, layout.key_type);
  for (size_t i = 0; i < layout.fields.size(); ++i) EncodeValue(w, record.values[i], layout.fields[i].type);
  return out;
}

Record DecodeRecord(const RecordLayout& layout, std::string_view payload, uint64_t base) {
  ByteReader r(payload, base);
  Record rec;
  rec.key = DecodeValue(r, layout.key_type);
  rec.values.reserve(layout.fields.size());
  for (const auto& f : layout.fields) rec.values.push_back(DecodeValue(r, f.type));
  if (!r.done()) {
    throw DecodeError("record at offset " + std::to_string(base) + " has " + std::to_string(r.remaining()) +
                      " trailing bytes");
  }
  return rec;
}

namespace {

bool Conforms(const Value& v, FieldType t) {
  switch (t) {
    case FieldType::kI32:
      return std::holds_alternative<int64_t>(v) && std::get<int64_t>(v) >= std::numeric_limits<int32_t>::min() &&
             std::get<int64_t>(v) <= std::numeric_limits<int32_t>::max();
    case FieldType::kToken:
      return std::holds_alternative<int64_t>(v) && std::get<int64_t>(v) >= 0 &&
             std::get<int64_t>(v) <= std::numeric_limits<uint32_t>::max();
    case FieldType::kI64: return std::holds_alternative<int64_t>(v);
    case FieldType::kBool: return std::holds_alternative<bool>(v);
    case FieldType::kStr:
    case FieldType::kBlob: return std::holds_alternative<std::string>(v);
  }
  return false;
}

}  // namespace

void CheckRecord(const RecordLayout& layout, const Record& record) {
  if (record.values.size() != layout.fields.size()) {
    throw IoError("record has " + std::to_string(record.values.size()) + " values, layout " + layout.name + " has " +
                  std::to_string(layout.fields.size()) + " fields");
  }
  if (!Conforms(record.key, layout.key_type)) throw IoError("record key does not match " + layout.name);
  for (size_t i = 0; i < layout.fields.size(); ++i) {
    if (!Conforms(record.values[i], layout.fields[i].type)) {
      throw IoError("field " + layout.fields[i].name + " does not match its type");
    }
  }
}

}  // namespace manimal::storage
