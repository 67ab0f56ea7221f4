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

#include "manimal/storage/byte_io.h"

#include <fstream>

#include "manimal/common/error.h"

namespace manimal::storage {

void ByteWriter::Str16(std::string_view s) {
  if (s.size() > 0xffff) throw IoError("string too long for a u16 length: " + std::to_string(s.size()));
  U16(static_cast<uint16_t>(s.size()));
  Bytes(s);
}

void ByteWriter::Str32(std::string_view s) {
  if (s.size() > 0xffffffffu) throw IoError("value too long for a u32 length");
  U32(static_cast<uint32_t>(s.size()));
  Bytes(s);
}

void ByteWriter::Varint(uint64_t v) {
  while (v >= 0x80) {
    U8(static_cast<uint8_t>(v | 0x80));
    v >>= 7;
  }
  U8(static_cast<uint8_t>(v));
}

std::string_view ByteReader::Take(size_t n) {
  if (n > remaining()) {
    throw DecodeError("truncated data at byte offset " + std::to_string(offset()) + ": need " + std::to_string(n) +
                      " bytes, have " + std::to_string(remaining()));
  }
  std::string_view out = data_.substr(pos_, n);
  pos_ += n;
  return out;
}

uint64_t ByteReader::Varint() {
  const uint64_t start = offset();
  uint64_t v = 0;
  for (int shift = 0;; shift += 7) {
    if (done()) throw DecodeError("truncated varint at byte offset " + std::to_string(start));
    const uint8_t b = U8();
    if (shift == 63 && b > 1) throw DecodeError("varint overflow at byte offset " + std::to_string(start));
    v |= static_cast<uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
    if (shift == 63) throw DecodeError("varint overflow at byte offset " + std::to_string(start));
  }
}

void WriteLayout(ByteWriter& w, const RecordLayout& layout) {
  w.Str16(layout.name);
  w.U8(static_cast<uint8_t>(layout.key_type));
  w.U16(static_cast<uint16_t>(layout.fields.size()));
  for (const auto& f : layout.fields) {
    w.Str16(f.name);
    w.U8(static_cast<uint8_t>(f.type));
  }
}

namespace {

FieldType CheckedType(uint8_t t, uint64_t offset) {
  if (t < 1 || t > 6) throw DecodeError("bad field type " + std::to_string(t) + " at byte offset " + std::to_string(offset));
  return static_cast<FieldType>(t);
}

}  // namespace

RecordLayout ReadLayout(ByteReader& r) {
  RecordLayout layout;
  layout.name = std::string(r.Str16());
  layout.key_type = CheckedType(r.U8(), r.offset() - 1);
  const uint16_t n = r.U16();
  for (uint16_t i = 0; i < n; ++i) {
    Field f;
    f.name = std::string(r.Str16());
    f.type = CheckedType(r.U8(), r.offset() - 1);
    layout.fields.push_back(std::move(f));
  }
  return layout;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string data;
  in.seekg(0, std::ios::end);
  data.resize(static_cast<size_t>(in.tellg()));
  in.seekg(0);
  in.read(data.data(), static_cast<std::streamsize>(data.size()));
  if (!in) throw IoError("cannot read " + path.string());
  return data;
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

uint64_t FileSize(const std::filesystem::path& path) {
  std::error_code ec;
  const auto n = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message());
  return n;
}

}  // namespace manimal::storage
