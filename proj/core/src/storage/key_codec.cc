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

#include "manimal/storage/key_codec.h"

#include "manimal/common/error.h"

namespace manimal::storage {

namespace {

std::string BigEndian(uint64_t x, int bytes) {
  std::string out(static_cast<size_t>(bytes), '\0');
  for (int i = bytes - 1; i >= 0; --i) {
    out[static_cast<size_t>(i)] = static_cast<char>(x & 0xff);
    x >>= 8;
  }
  return out;
}

uint64_t FromBigEndian(std::string_view b) {
  uint64_t x = 0;
  for (unsigned char c : b) x = (x << 8) | c;
  return x;
}

}  // namespace

std::string EncodeKey(const Value& v, FieldType type) {
  switch (type) {
    case FieldType::kI32:
      return BigEndian(static_cast<uint32_t>(static_cast<int32_t>(std::get<int64_t>(v))) ^ 0x80000000u, 4);
    case FieldType::kI64: return BigEndian(static_cast<uint64_t>(std::get<int64_t>(v)) ^ (uint64_t{1} << 63), 8);
    case FieldType::kToken: return BigEndian(static_cast<uint32_t>(std::get<int64_t>(v)), 4);
    case FieldType::kBool: return std::string(1, std::get<bool>(v) ? '\1' : '\0');
    case FieldType::kStr:
    case FieldType::kBlob: return std::get<std::string>(v);
  }
  return {};
}

Value DecodeKey(std::string_view bytes, FieldType type) {
  auto need = [&](size_t n) {
    if (bytes.size() != n) throw DecodeError("bad key width " + std::to_string(bytes.size()));
  };
  switch (type) {
    case FieldType::kI32:
      need(4);
      return static_cast<int64_t>(static_cast<int32_t>(static_cast<uint32_t>(FromBigEndian(bytes)) ^ 0x80000000u));
    case FieldType::kI64: need(8); return static_cast<int64_t>(FromBigEndian(bytes) ^ (uint64_t{1} << 63));
    case FieldType::kToken: need(4); return static_cast<int64_t>(FromBigEndian(bytes));
    case FieldType::kBool: need(1); return bytes[0] != 0;
    case FieldType::kStr:
    case FieldType::kBlob: return std::string(bytes);
  }
  return {};
}

}  // namespace manimal::storage
