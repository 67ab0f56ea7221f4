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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace manimal::storage {

inline uint64_t ZigZag(int64_t v) { return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63); }
inline int64_t UnZigZag(uint64_t u) { return static_cast<int64_t>((u >> 1) ^ (~(u & 1) + 1)); }

/// First value, then successive differences (wrapping), each zigzag-mapped
/// and written as a LEB128 varint.
std::string DeltaEncode(std::span<const int64_t> values);
void DeltaEncodeTo(std::span<const int64_t> values, std::string* out);

/// Decodes the whole payload. Throws DecodeError on truncation, overflow,
/// or when `expected` is given and the count differs.
std::vector<int64_t> DeltaDecode(std::string_view payload, int64_t expected = -1);

}  // namespace manimal::storage
