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
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "manimal/storage/key_range.h"
#include "manimal/storage/record_codec.h"

namespace manimal::storage {

inline constexpr char kBTreeMagic[] = "MMBT";
inline constexpr uint8_t kBTreeVersion = 1;
inline constexpr uint32_t kDefaultPageSize = 4096;
inline constexpr uint32_t kNoPage = 0xffffffffu;

enum class PageType : uint8_t { kLeaf = 1, kInternal = 2, kOverflow = 3 };

struct ScanStats {
  uint64_t pages_read = 0;
  uint64_t records = 0;
  uint64_t bytes_read = 0;
};

/// Bulk loads a clustered B+Tree from entries arriving in key order. Keys
/// are order-preserving encodings of the index field; each leaf entry
/// stores the whole record (or spills it to overflow pages).
class BTreeBuilder {
 public:
  BTreeBuilder(std::filesystem::path path, RecordLayout layout, std::string index_field, FieldType index_type,
               uint32_t page_size = kDefaultPageSize);

  /// Throws UnsortedInputError if `key` sorts before the previous key.
  void Add(std::string_view key, const Record& record);
  void Finish();

 private:
  uint32_t NewPage(PageType type);
  std::string& Page(uint32_t id) { return pages_[id]; }
  void FlushLeaf();
  uint32_t WriteOverflow(std::string_view payload);

  std::filesystem::path path_;
  RecordLayout layout_;
  std::string index_field_;
  FieldType index_type_;
  uint32_t page_size_;
  std::vector<std::string> pages_;  // page 0 is the header

  // Leaf under construction.
  std::string leaf_body_;
  uint16_t leaf_count_ = 0;
  std::string leaf_first_key_;
  uint32_t leaf_id_ = kNoPage;
  uint32_t prev_leaf_ = kNoPage;
  uint32_t first_leaf_ = kNoPage;
  std::vector<std::pair<std::string, uint32_t>> leaves_;  // (first key, page)

  std::string last_key_;
  bool have_last_ = false;
  uint64_t records_ = 0;
};

/// Read side: page-granular access with scan accounting.
class BTreeReader {
 public:
  explicit BTreeReader(const std::filesystem::path& path);

  const RecordLayout& layout() const { return layout_; }
  const std::string& index_field() const { return index_field_; }
  FieldType index_type() const { return index_type_; }
  uint64_t record_count() const { return record_count_; }
  uint32_t height() const { return height_; }
  uint32_t leaf_count() const { return leaf_count_; }
  uint32_t page_count() const { return page_count_; }
  uint32_t page_size() const { return page_size_; }

  using Visitor = std::function<void(std::string_view key, Record&& record)>;

  /// Visits records whose key lies in the (normalized) ranges, in key order.
  void Scan(const KeyRangeSet& ranges, const Visitor& visit, ScanStats* stats);

  /// Recomputes the page checksum; true when it matches the header.
  bool VerifyChecksum();

 private:
  std::string ReadPage(uint32_t id, ScanStats* stats);
  std::string ReadRecordBytes(std::string_view page, size_t& pos, uint64_t base, ScanStats* stats);

  std::filesystem::path path_;
  std::ifstream in_;
  RecordLayout layout_;
  std::string index_field_;
  FieldType index_type_ = FieldType::kI64;
  uint32_t page_size_ = kDefaultPageSize;
  uint32_t root_ = kNoPage;
  uint32_t height_ = 0;
  uint32_t leaf_count_ = 0;
  uint32_t first_leaf_ = kNoPage;
  uint32_t page_count_ = 1;
  uint64_t record_count_ = 0;
  uint32_t crc_ = 0;
};

}  // namespace manimal::storage
