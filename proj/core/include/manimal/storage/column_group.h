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
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "manimal/storage/btree.h"
#include "manimal/storage/record_codec.h"

namespace manimal::storage {

inline constexpr char kColumnGroupMagic[] = "MMCG";
inline constexpr char kColumnGroupEnd[] = "MMCE";
inline constexpr uint8_t kColumnGroupVersion = 1;

/// One entry of the column directory. The key column comes first, under
/// the name "key".
struct ColumnInfo {
  std::string name;
  FieldType type = FieldType::kI64;
  Codec codec = Codec::kPlain;
  uint64_t offset = 0;  // absolute file offset of the segment
  uint64_t length = 0;
};

/// Writes a column-major file holding the key and every layout field.
/// Integral columns (ints, tokens) may use Codec::kDelta; token columns are
/// tagged kDict and stored as u32. Anything else is stored plain.
void WriteColumnGroup(const std::filesystem::path& path, const RecordLayout& layout,
                      const std::map<std::string, Codec>& codecs, const std::vector<Record>& records);

class ColumnGroupReader {
 public:
  using Visitor = std::function<void(Record&&)>;

  explicit ColumnGroupReader(const std::filesystem::path& path);

  const RecordLayout& layout() const { return layout_; }
  uint64_t rows() const { return rows_; }
  const std::vector<ColumnInfo>& columns() const { return columns_; }
  const ColumnInfo* Column(std::string_view name) const;

  /// Decodes every row in order; the whole file counts toward bytes_read.
  void Scan(const Visitor& visit, ScanStats* stats = nullptr) const;

 private:
  std::filesystem::path path_;
  std::string data_;
  RecordLayout layout_;
  uint64_t rows_ = 0;
  std::vector<ColumnInfo> columns_;
};

}  // namespace manimal::storage
