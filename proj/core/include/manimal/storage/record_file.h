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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "manimal/storage/record_codec.h"

namespace manimal::storage {

inline constexpr char kRecordFileMagic[] = "MMRF";
inline constexpr char kRecordFileEndMagic[] = "MMRE";
inline constexpr uint8_t kRecordFileVersion = 1;
inline constexpr size_t kRecordFileFooterSize = 16;  // magic, u64 count, u32 crc

/// Streams records into a RecordFile. Data goes to `<path>.tmp` and is
/// renamed into place by Finish().
class RecordFileWriter {
 public:
  RecordFileWriter(const std::filesystem::path& path, RecordLayout layout);
  ~RecordFileWriter();
  RecordFileWriter(const RecordFileWriter&) = delete;
  RecordFileWriter& operator=(const RecordFileWriter&) = delete;

  void Append(const Record& record);
  void Finish();
  uint64_t count() const { return count_; }

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  RecordLayout layout_;
  std::ofstream out_;
  std::string buf_;
  uint32_t crc_ = 0;
  uint64_t count_ = 0;
  bool finished_ = false;
};

/// Sequential reader. The footer's count and checksum are verified when
/// the last record has been read.
class RecordFileReader {
 public:
  explicit RecordFileReader(const std::filesystem::path& path);

  const RecordLayout& layout() const { return layout_; }
  /// Records promised by the footer.
  uint64_t count() const { return footer_count_; }
  bool Next(Record& out);
  uint64_t bytes_read() const { return bytes_read_; }

 private:

  std::filesystem::path path_;
  std::ifstream in_;
  RecordLayout layout_;
  uint64_t file_size_ = 0;
  uint64_t body_end_ = 0;
  bool has_footer_ = false;
  uint64_t footer_count_ = 0;
  uint32_t footer_crc_ = 0;
  uint64_t offset_ = 0;  // file offset of the next unread byte
  uint64_t seen_ = 0;
  uint32_t crc_ = 0;
  uint64_t bytes_read_ = 0;
  bool finished_ = false;
};

void WriteRecordFile(const std::filesystem::path& path, const RecordLayout& layout,
                     const std::vector<Record>& records);
std::vector<Record> ReadRecordFile(const std::filesystem::path& path, RecordLayout* layout = nullptr);

}  // namespace manimal::storage
