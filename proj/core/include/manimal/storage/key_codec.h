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

#include "manimal/common/value.h"

namespace manimal::storage {

/// Order-preserving byte encoding: comparing encodings bytewise (unsigned)
/// orders values like the values themselves. Integers are big-endian with
/// the sign bit flipped; str/blob are their raw bytes; tokens are u32
/// big-endian; bools one byte.
std::string EncodeKey(const Value& v, FieldType type);
Value DecodeKey(std::string_view bytes, FieldType type);

}  // namespace manimal::storage
