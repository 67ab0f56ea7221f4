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

#include "manimal/storage/record_file.h"

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"

namespace manimal::storage {

RecordFileWriter::RecordFileWriter(const std::filesystem::path& path, RecordLayout layout)
    : path_(path), tmp_(path.string() + ".tmp"), layout_(std::move(layout)) {
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot create " + tmp_.string());
  std::string header;
  ByteWriter w(&header);
  w.Bytes(std::string_view(kRecordFileMagic, 4));
  w.U8(kRecordFileVersion);
  WriteLayout(w, layout_);
  out_.write(header.data(), static_cast<std::streamsize>(header.size()));
}

RecordFileWriter::~RecordFileWriter() {
  if (!finished_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void RecordFileWriter::Append(const Record& record) {
  CheckRecord(layout_, record);
  const std::string payload = EncodeRecord(layout_, record);
  buf_.clear();
  ByteWriter w(&buf_);
  w.Str32(payload);
  crc_ = Crc32(buf_, crc_);
  out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  ++count_;
}

void RecordFileWriter::Finish() {
  std::string footer;
  ByteWriter w(&footer);
  w.Bytes(std::string_view(kRecordFileEndMagic, 4));
  w.U64(count_);
  w.U32(crc_);
  out_.write(footer.data(), static_cast<std::streamsize>(footer.size()));
  out_.close();
  if (!out_) throw IoError("cannot write " + tmp_.string());
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw IoError("cannot rename " + tmp_.string() + ": " + ec.message());
  finished_ = true;
}

RecordFileReader::RecordFileReader(const std::filesystem::path& path) : path_(path) {
  in_.open(path, std::ios::binary);
  if (!in_) throw IoError("cannot open " + path.string());
  file_size_ = FileSize(path);

  // Header: magic, version, layout. Read a generous prefix and parse it.
  std::string head(static_cast<size_t>(std::min<uint64_t>(file_size_, 1 << 16)), '\0');
  in_.read(head.data(), static_cast<std::streamsize>(head.size()));
  ByteReader r(head);
  if (head.size() < 5 || head.compare(0, 4, kRecordFileMagic, 4) != 0) {
    throw DecodeError(path.string() + ": bad magic, not a record file");
  }
  r.Bytes(4);
  const uint8_t version = r.U8();
  if (version != kRecordFileVersion) throw DecodeError(path.string() + ": unsupported version " + std::to_string(version));
  layout_ = ReadLayout(r);
  offset_ = r.pos();
  bytes_read_ = offset_;

  body_end_ = file_size_;
  if (file_size_ >= offset_ + kRecordFileFooterSize) {
    std::string footer(kRecordFileFooterSize, '\0');
    in_.clear();
    in_.seekg(static_cast<std::streamoff>(file_size_ - kRecordFileFooterSize));
    in_.read(footer.data(), static_cast<std::streamsize>(footer.size()));
    if (footer.compare(0, 4, kRecordFileEndMagic, 4) == 0) {
      ByteReader fr(footer);
      fr.Bytes(4);
      footer_count_ = fr.U64();
      footer_crc_ = fr.U32();
      has_footer_ = true;
      body_end_ = file_size_ - kRecordFileFooterSize;
    }
  }
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(offset_));
}

bool RecordFileReader::Next(Record& out) {
  if (finished_) return false;
  if (offset_ == body_end_) {
    finished_ = true;
    if (!has_footer_) throw DecodeError(path_.string() + ": missing footer at byte offset " + std::to_string(offset_));
    bytes_read_ += kRecordFileFooterSize;
    if (seen_ != footer_count_) {
      throw DecodeError(path_.string() + ": footer promises " + std::to_string(footer_count_) + " records, found " +
                        std::to_string(seen_));
    }
    if (crc_ != footer_crc_) throw DecodeError(path_.string() + ": checksum mismatch");
    return false;
  }
  const uint64_t start = offset_;
  if (body_end_ - offset_ < 4) {
    throw DecodeError(path_.string() + ": truncated record at byte offset " + std::to_string(start));
  }
  char len_buf[4];
  in_.read(len_buf, 4);
  const uint32_t len = static_cast<uint32_t>(static_cast<uint8_t>(len_buf[0])) |
                       static_cast<uint32_t>(static_cast<uint8_t>(len_buf[1])) << 8 |
                       static_cast<uint32_t>(static_cast<uint8_t>(len_buf[2])) << 16 |
                       static_cast<uint32_t>(static_cast<uint8_t>(len_buf[3])) << 24;
  if (body_end_ - offset_ - 4 < len) {
    throw DecodeError(path_.string() + ": truncated record at byte offset " + std::to_string(start) + " (needs " +
                      std::to_string(len) + " payload bytes, " + std::to_string(body_end_ - offset_ - 4) +
                      " remain)");
  }
  std::string payload(len, '\0');
  in_.read(payload.data(), len);
  if (!in_) throw IoError(path_.string() + ": read failed at byte offset " + std::to_string(start));
  crc_ = Crc32(std::string_view(len_buf, 4), crc_);
  crc_ = Crc32(payload, crc_);
  offset_ += 4 + len;
  bytes_read_ += 4 + len;
  out = DecodeRecord(layout_, payload, start + 4);
  ++seen_;
  return true;
}

void WriteRecordFile(const std::filesystem::path& path, const RecordLayout& layout,
                     const std::vector<Record>& records) {
  RecordFileWriter w(path, layout);
  for (const auto& r : records) w.Append(r);
  w.Finish();
}

std::vector<Record> ReadRecordFile(const std::filesystem::path& path, RecordLayout* layout) {
  RecordFileReader r(path);
  if (layout) *layout = r.layout();
  std::vector<Record> out;
  Record rec;
  while (r.Next(rec)) out.push_back(std::move(rec));
  return out;
}

}  // namespace manimal::storage
