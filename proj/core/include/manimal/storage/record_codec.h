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
#include <string_view>
#include <vector>

#include "manimal/storage/byte_io.h"

namespace manimal::storage {

// Field encodings: i32/i64 little-endian fixed width, str/blob u32 length
// plus raw bytes, token u32, bool one byte.

void EncodeValue(ByteWriter& w, const Value& v, FieldType type);
Value DecodeValue(ByteReader& r, FieldType type);
/// Encoded width of a value.
size_t EncodedSize(const Value& v, FieldType type);

/// Value fields only, in layout order.
std::string EncodeValues(const RecordLayout& layout, const std::vector<Value>& values);
/// Key followed by the value fields.
std::string EncodeRecord(const RecordLayout& layout, const Record& record);
/// Inverse of EncodeRecord; `base` is the payload's file offset for errors.
Record DecodeRecord(const RecordLayout& layout, std::string_view payload, uint64_t base = 0);

/// Throws IoError unless the record's values have the layout's shape.
void CheckRecord(const RecordLayout& layout, const Record& record);

}  // namespace manimal::storage
