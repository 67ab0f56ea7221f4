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
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>

#include "manimal/common/value.h"

namespace manimal::storage {

/// Appends little-endian integers and length-prefixed strings to a buffer.
class ByteWriter {
 public:
  explicit ByteWriter(std::string* out) : out_(out) {}

  void U8(uint8_t v) { out_->push_back(static_cast<char>(v)); }
  void U16(uint16_t v) { Le(v, 2); }
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void Bytes(std::string_view b) { out_->append(b); }
  /// u16 length + bytes; throws if longer than 65535.
  void Str16(std::string_view s);
  /// u32 length + bytes.
  void Str32(std::string_view s);
  void Varint(uint64_t v);

 private:
  void Le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string* out_;
};

/// Bounds-checked cursor over a byte range. Errors report the absolute
/// offset (`base` + position).
class ByteReader {
 public:
  ByteReader(std::string_view data, uint64_t base = 0) : data_(data), base_(base) {}

  uint8_t U8() { return static_cast<uint8_t>(Take(1)[0]); }
  uint16_t U16() { return static_cast<uint16_t>(Le(2)); }
  uint32_t U32() { return static_cast<uint32_t>(Le(4)); }
  uint64_t U64() { return Le(8); }
  std::string_view Bytes(size_t n) { return Take(n); }
  std::string_view Str16() { return Take(U16()); }
  std::string_view Str32() { return Take(U32()); }
  uint64_t Varint();

  size_t pos() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  uint64_t offset() const { return base_ + pos_; }

 private:
  std::string_view Take(size_t n);
  uint64_t Le(int n) {
    std::string_view b = Take(static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(b[static_cast<size_t>(i)]);
    return v;
  }

  std::string_view data_;
  uint64_t base_;
  size_t pos_ = 0;
};

/// Serializes a layout (name, key type, fields with types) for file headers.
void WriteLayout(ByteWriter& w, const RecordLayout& layout);
RecordLayout ReadLayout(ByteReader& r);

std::string ReadFile(const std::filesystem::path& path);
/// Writes to a sibling temp file, then renames over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);
uint64_t FileSize(const std::filesystem::path& path);

}  // namespace manimal::storage
