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

#include "manimal/storage/column_group.h"

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"
#include "manimal/storage/delta_codec.h"

namespace manimal::storage {

namespace {

constexpr size_t kFooterSize = 8;  // magic + u32 crc

bool DeltaCapable(FieldType t) {
  return t == FieldType::kI32 || t == FieldType::kI64 || t == FieldType::kToken;
}

Codec EffectiveCodec(FieldType type, const std::map<std::string, Codec>& codecs, const std::string& name) {
  if (type == FieldType::kToken) return Codec::kDict;
  auto it = codecs.find(name);
  if (it != codecs.end() && it->second == Codec::kDelta && DeltaCapable(type)) return Codec::kDelta;
  return Codec::kPlain;
}

std::string EncodeSegment(FieldType type, Codec codec, const std::vector<Record>& records, int field) {
  auto get = [&](const Record& r) -> const Value& {
    return field < 0 ? r.key : r.values[static_cast<size_t>(field)];
  };
  std::string out;
  if (codec == Codec::kDelta) {
    std::vector<int64_t> ints;
    ints.reserve(records.size());
    for (const auto& r : records) ints.push_back(std::get<int64_t>(get(r)));
    DeltaEncodeTo(ints, &out);
    return out;
  }
  ByteWriter w(&out);
  for (const auto& r : records) EncodeValue(w, get(r), type);
  return out;
}

}  // namespace

void WriteColumnGroup(const std::filesystem::path& path, const RecordLayout& layout,
                      const std::map<std::string, Codec>& codecs, const std::vector<Record>& records) {
  for (const auto& r : records) CheckRecord(layout, r);

  std::vector<ColumnInfo> cols;
  std::vector<std::string> segments;
  cols.push_back({std::string(kKeyField), layout.key_type,
                  EffectiveCodec(layout.key_type, codecs, std::string(kKeyField)), 0, 0});
  segments.push_back(EncodeSegment(layout.key_type, cols.back().codec, records, -1));
  for (size_t i = 0; i < layout.fields.size(); ++i) {
    const Field& f = layout.fields[i];
    cols.push_back({f.name, f.type, EffectiveCodec(f.type, codecs, f.name), 0, 0});
    segments.push_back(EncodeSegment(f.type, cols.back().codec, records, static_cast<int>(i)));
  }

  std::string head;
  ByteWriter hw(&head);
  hw.Bytes(std::string_view(kColumnGroupMagic, 4));
  hw.U8(kColumnGroupVersion);
  WriteLayout(hw, layout);
  hw.U64(records.size());
  hw.U16(static_cast<uint16_t>(cols.size()));
  // Directory entries have fixed size once names are known, so offsets can
  // be computed before writing.
  size_t dir_size = 0;
  for (const auto& c : cols) dir_size += 2 + c.name.size() + 1 + 1 + 8 + 8;
  uint64_t offset = head.size() + dir_size;
  for (size_t i = 0; i < cols.size(); ++i) {
    cols[i].offset = offset;
    cols[i].length = segments[i].size();
    offset += segments[i].size();
    hw.Str16(cols[i].name);
    hw.U8(static_cast<uint8_t>(cols[i].type));
    hw.U8(static_cast<uint8_t>(cols[i].codec));
    hw.U64(cols[i].offset);
    hw.U64(cols[i].length);
  }
  for (const auto& s : segments) head += s;
  const uint32_t crc = Crc32(head);
  hw.Bytes(std::string_view(kColumnGroupEnd, 4));
  hw.U32(crc);
  WriteFileAtomic(path, head);
}

ColumnGroupReader::ColumnGroupReader(const std::filesystem::path& path) : path_(path), data_(ReadFile(path)) {
  if (data_.size() < 4 + kFooterSize || data_.compare(0, 4, kColumnGroupMagic, 4) != 0) {
    throw DecodeError(path.string() + ": bad magic, not a column group");
  }
  const std::string_view body(data_.data(), data_.size() - kFooterSize);
  ByteReader fr(std::string_view(data_).substr(body.size()), body.size());
  if (fr.Bytes(4) != std::string_view(kColumnGroupEnd, 4)) throw DecodeError(path.string() + ": missing footer");
  if (fr.U32() != Crc32(body)) throw DecodeError(path.string() + ": checksum mismatch");

  ByteReader r(body);
  r.Bytes(4);
  if (r.U8() != kColumnGroupVersion) throw DecodeError(path.string() + ": unsupported column group version");
  layout_ = ReadLayout(r);
  rows_ = r.U64();
  const uint16_t n = r.U16();
  if (n != layout_.fields.size() + 1) throw DecodeError(path.string() + ": column count does not match layout");
  for (uint16_t i = 0; i < n; ++i) {
    ColumnInfo c;
    c.name = std::string(r.Str16());
    c.type = static_cast<FieldType>(r.U8());
    c.codec = static_cast<Codec>(r.U8());
    c.offset = r.U64();
    c.length = r.U64();
    if (c.offset + c.length > body.size() || c.offset + c.length < c.offset) {
      throw DecodeError(path.string() + ": segment " + c.name + " out of bounds");
    }
    columns_.push_back(std::move(c));
  }
}

const ColumnInfo* ColumnGroupReader::Column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void ColumnGroupReader::Scan(const Visitor& visit, ScanStats* stats) const {
  const size_t rows = static_cast<size_t>(rows_);
  std::vector<std::vector<Value>> cols(columns_.size());
  for (size_t i = 0; i < columns_.size(); ++i) {
    const ColumnInfo& c = columns_[i];
    const std::string_view seg = std::string_view(data_).substr(c.offset, c.length);
    cols[i].reserve(rows);
    if (c.codec == Codec::kDelta) {
      for (int64_t v : DeltaDecode(seg, static_cast<int64_t>(rows))) {
        if (c.type == FieldType::kI32) v = static_cast<int32_t>(v);
        cols[i].emplace_back(v);
      }
    } else {
      ByteReader r(seg, c.offset);
      for (size_t row = 0; row < rows; ++row) cols[i].push_back(DecodeValue(r, c.type));
      if (!r.done()) throw DecodeError(path_.string() + ": trailing bytes in segment " + c.name);
    }
  }
  if (stats) {
    stats->bytes_read += data_.size();
    stats->pages_read += 1;
  }
  for (size_t row = 0; row < rows; ++row) {
    Record rec;
    rec.key = std::move(cols[0][row]);
    rec.values.reserve(columns_.size() - 1);
    for (size_t i = 1; i < columns_.size(); ++i) rec.values.push_back(std::move(cols[i][row]));
    if (stats) ++stats->records;
    visit(std::move(rec));
  }
}

}  // namespace manimal::storage
