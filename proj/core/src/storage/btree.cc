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

#include "manimal/storage/btree.h"

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"

namespace manimal::storage {

namespace {

constexpr size_t kPageHeader = 7;  // u8 type, u16 count/used, u32 next/child0

void PutU32At(std::string& page, size_t at, uint32_t v) {
  for (int i = 0; i < 4; ++i) page[at + static_cast<size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
}

}  // namespace

BTreeBuilder::BTreeBuilder(std::filesystem::path path, RecordLayout layout, std::string index_field,
                           FieldType index_type, uint32_t page_size)
    : path_(std::move(path)),
      layout_(std::move(layout)),
      index_field_(std::move(index_field)),
      index_type_(index_type),
      page_size_(page_size) {
  if (page_size_ < 256) throw IoError("page size too small: " + std::to_string(page_size_));
  pages_.emplace_back();  // header, filled by Finish()
}

uint32_t BTreeBuilder::NewPage(PageType type) {
  pages_.emplace_back(page_size_, '\0');
  pages_.back()[0] = static_cast<char>(type);
  return static_cast<uint32_t>(pages_.size() - 1);
}

uint32_t BTreeBuilder::WriteOverflow(std::string_view payload) {
  const size_t cap = page_size_ - kPageHeader;
  uint32_t first = kNoPage;
  uint32_t prev = kNoPage;
  for (size_t off = 0; off < payload.size() || first == kNoPage; off += cap) {
    const uint32_t id = NewPage(PageType::kOverflow);
    const size_t n = std::min(cap, payload.size() - std::min(off, payload.size()));
    std::string& p = Page(id);
    p[1] = static_cast<char>(n & 0xff);
    p[2] = static_cast<char>(n >> 8);
    PutU32At(p, 3, kNoPage);
    p.replace(kPageHeader, n, payload.substr(off, n));
    if (prev != kNoPage) PutU32At(Page(prev), 3, id);
    if (first == kNoPage) first = id;
    prev = id;
    if (n == 0) break;
  }
  return first;
}

void BTreeBuilder::Add(std::string_view key, const Record& record) {
  if (have_last_ && key < std::string_view(last_key_)) {
    throw UnsortedInputError("index input not sorted on " + index_field_ + " at record " + std::to_string(records_));
  }
  CheckRecord(layout_, record);
  const size_t cap = page_size_ - kPageHeader;
  const std::string payload = EncodeRecord(layout_, record);
  std::string entry;
  ByteWriter w(&entry);
  w.Str16(key);
  const size_t inline_size = 2 + key.size() + 1 + 4 + payload.size();
  if (inline_size <= cap / 4) {
    w.U8(0);
    w.U32(static_cast<uint32_t>(payload.size()));
    w.Bytes(payload);
  } else {
    if (2 + key.size() + 9 > cap / 4) throw IoError("index key of " + std::to_string(key.size()) + " bytes is too long");
    w.U8(1);
    w.U32(static_cast<uint32_t>(payload.size()));
    w.U32(WriteOverflow(payload));
  }
  if (leaf_id_ != kNoPage && leaf_body_.size() + entry.size() > cap) FlushLeaf();
  if (leaf_id_ == kNoPage) {
    leaf_id_ = NewPage(PageType::kLeaf);
    leaf_first_key_ = std::string(key);
    if (first_leaf_ == kNoPage) first_leaf_ = leaf_id_;
  }
  leaf_body_ += entry;
  ++leaf_count_;
  last_key_ = std::string(key);
  have_last_ = true;
  ++records_;
}

void BTreeBuilder::FlushLeaf() {
  std::string& p = Page(leaf_id_);
  p[1] = static_cast<char>(leaf_count_ & 0xff);
  p[2] = static_cast<char>(leaf_count_ >> 8);
  PutU32At(p, 3, kNoPage);
  p.replace(kPageHeader, leaf_body_.size(), leaf_body_);
  if (prev_leaf_ != kNoPage) PutU32At(Page(prev_leaf_), 3, leaf_id_);
  leaves_.emplace_back(leaf_first_key_, leaf_id_);
  prev_leaf_ = leaf_id_;
  leaf_id_ = kNoPage;
  leaf_body_.clear();
  leaf_count_ = 0;
}

void BTreeBuilder::Finish() {
  if (leaf_id_ != kNoPage) FlushLeaf();
  const size_t cap = page_size_ - kPageHeader;
  std::vector<std::pair<std::string, uint32_t>> level = leaves_;
  uint32_t height = level.empty() ? 0 : 1;
  while (level.size() > 1) {
    std::vector<std::pair<std::string, uint32_t>> up;
    size_t i = 0;
    while (i < level.size()) {
      const uint32_t id = NewPage(PageType::kInternal);
      std::string body;
      ByteWriter w(&body);
      const std::string first_key = level[i].first;
      PutU32At(Page(id), 3, level[i].second);
      ++i;
      uint16_t count = 0;
      while (i < level.size() && body.size() + 2 + level[i].first.size() + 4 <= cap && count < 0xffff) {
        w.Str16(level[i].first);
        w.U32(level[i].second);
        ++count;
        ++i;
      }
      std::string& p = Page(id);
      p[1] = static_cast<char>(count & 0xff);
      p[2] = static_cast<char>(count >> 8);
      p.replace(kPageHeader, body.size(), body);
      up.emplace_back(first_key, id);
    }
    level = std::move(up);
    ++height;
  }
  const uint32_t root = level.empty() ? kNoPage : level[0].second;

  uint32_t crc = 0;
  for (size_t i = 1; i < pages_.size(); ++i) crc = Crc32(pages_[i], crc);
  std::string header;
  ByteWriter w(&header);
  w.Bytes(std::string_view(kBTreeMagic, 4));
  w.U8(kBTreeVersion);
  w.U32(page_size_);
  w.U32(root);
  w.U32(height);
  w.U32(static_cast<uint32_t>(leaves_.size()));
  w.U32(first_leaf_);
  w.U32(static_cast<uint32_t>(pages_.size()));
  w.U64(records_);
  w.U32(crc);
  w.Str16(index_field_);
  w.U8(static_cast<uint8_t>(index_type_));
  WriteLayout(w, layout_);
  if (header.size() > page_size_) throw IoError("index header does not fit in one page");
  header.resize(page_size_, '\0');
  pages_[0] = std::move(header);

  std::string file;
  file.reserve(pages_.size() * page_size_);
  for (const auto& p : pages_) file += p;
  WriteFileAtomic(path_, file);
}

BTreeReader::BTreeReader(const std::filesystem::path& path) : path_(path) {
  in_.open(path, std::ios::binary);
  if (!in_) throw IoError("cannot open " + path.string());
  const uint64_t size = FileSize(path);
  std::string head(static_cast<size_t>(std::min<uint64_t>(size, kDefaultPageSize)), '\0');
  in_.read(head.data(), static_cast<std::streamsize>(head.size()));
  if (head.size() < 4 || head.compare(0, 4, kBTreeMagic, 4) != 0) {
    throw DecodeError(path.string() + ": bad magic, not a B+Tree index");
  }
  ByteReader r(head);
  r.Bytes(4);
  if (r.U8() != kBTreeVersion) throw DecodeError(path.string() + ": unsupported index version");
  page_size_ = r.U32();
  root_ = r.U32();
  height_ = r.U32();
  leaf_count_ = r.U32();
  first_leaf_ = r.U32();
  page_count_ = r.U32();
  record_count_ = r.U64();
  crc_ = r.U32();
  index_field_ = std::string(r.Str16());
  index_type_ = static_cast<FieldType>(r.U8());
  layout_ = ReadLayout(r);
  if (page_size_ < 256 || size != static_cast<uint64_t>(page_count_) * page_size_) {
    throw DecodeError(path.string() + ": size " + std::to_string(size) + " does not match " +
                      std::to_string(page_count_) + " pages");
  }
}

std::string BTreeReader::ReadPage(uint32_t id, ScanStats* stats) {
  if (id == 0 || id >= page_count_) throw DecodeError(path_.string() + ": page id " + std::to_string(id) + " out of range");
  std::string page(page_size_, '\0');
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(static_cast<uint64_t>(id) * page_size_));
  in_.read(page.data(), page_size_);
  if (!in_) throw IoError(path_.string() + ": cannot read page " + std::to_string(id));
  if (stats) {
    ++stats->pages_read;
    stats->bytes_read += page_size_;
  }
  return page;
}

std::string BTreeReader::ReadRecordBytes(std::string_view page, size_t& pos, uint64_t base, ScanStats* stats) {
  ByteReader r(page.substr(pos), base + pos);
  const uint8_t flag = r.U8();
  const uint32_t len = r.U32();
  std::string out;
  if (flag == 0) {
    out = std::string(r.Bytes(len));
  } else if (flag == 1) {
    uint32_t next = r.U32();
    out.reserve(len);
    while (out.size() < len) {
      if (next == kNoPage) throw DecodeError(path_.string() + ": overflow chain ends early");
      const std::string p = ReadPage(next, stats);
      if (static_cast<PageType>(p[0]) != PageType::kOverflow) {
        throw DecodeError(path_.string() + ": page " + std::to_string(next) + " is not an overflow page");
      }
      ByteReader pr(p, static_cast<uint64_t>(next) * page_size_);
      pr.U8();
      const uint16_t used = pr.U16();
      next = pr.U32();
      out.append(pr.Bytes(used));
    }
    if (out.size() != len) throw DecodeError(path_.string() + ": overflow chain length mismatch");
  } else {
    throw DecodeError(path_.string() + ": bad entry flag at byte offset " + std::to_string(base + pos));
  }
  pos += r.pos();
  return out;
}

void BTreeReader::Scan(const KeyRangeSet& ranges, const Visitor& visit, ScanStats* stats) {
  if (root_ == kNoPage) return;
  uint32_t cached_id = kNoPage;
  std::string cached;
  auto page = [&](uint32_t id) -> const std::string& {
    if (id != cached_id) {
      cached = ReadPage(id, stats);
      cached_id = id;
    }
    return cached;
  };

  for (const auto& range : ranges) {
    if (range.Empty()) continue;
    uint32_t id = root_;
    for (uint32_t level = 1; level < height_; ++level) {
      const std::string p = page(id);
      if (static_cast<PageType>(p[0]) != PageType::kInternal) {
        throw DecodeError(path_.string() + ": page " + std::to_string(id) + " is not an internal page");
      }
      ByteReader r(p, static_cast<uint64_t>(id) * page_size_);
      r.U8();
      const uint16_t count = r.U16();
      uint32_t child = r.U32();
      for (uint16_t i = 0; i < count; ++i) {
        const std::string_view sep = r.Str16();
        const uint32_t c = r.U32();
        if (!range.lo || !(sep < std::string_view(*range.lo))) break;
        child = c;
      }
      id = child;
    }
    bool done = false;
    while (!done && id != kNoPage) {
      const std::string p = page(id);
      if (static_cast<PageType>(p[0]) != PageType::kLeaf) {
        throw DecodeError(path_.string() + ": page " + std::to_string(id) + " is not a leaf");
      }
      const uint64_t base = static_cast<uint64_t>(id) * page_size_;
      ByteReader hr(p, base);
      hr.U8();
      const uint16_t count = hr.U16();
      const uint32_t next = hr.U32();
      size_t pos = hr.pos();
      for (uint16_t i = 0; i < count; ++i) {
        ByteReader kr(std::string_view(p).substr(pos), base + pos);
        const std::string key(kr.Str16());
        pos += kr.pos();
        if (range.hi && !(std::string_view(key) < std::string_view(*range.hi))) {
          done = true;
          break;
        }
        if (range.lo && std::string_view(key) < std::string_view(*range.lo)) {
          // Skip the entry without touching overflow pages.
          ByteReader sr(std::string_view(p).substr(pos), base + pos);
          const uint8_t flag = sr.U8();
          const uint32_t len = sr.U32();
          sr.Bytes(flag == 0 ? len : 4);
          pos += sr.pos();
          continue;
        }
        const std::string payload = ReadRecordBytes(p, pos, base, stats);
        Record rec = DecodeRecord(layout_, payload, base + pos);
        if (stats) ++stats->records;
        visit(key, std::move(rec));
      }
      id = next;
    }
  }
}

bool BTreeReader::VerifyChecksum() {
  uint32_t crc = 0;
  for (uint32_t id = 1; id < page_count_; ++id) crc = Crc32(ReadPage(id, nullptr), crc);
  return crc == crc_;
}

}  // namespace manimal::storage
