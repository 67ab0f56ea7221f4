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

#include "manimal/storage/dictionary.h"

#include <algorithm>

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"
#include "manimal/storage/byte_io.h"

namespace manimal::storage {

namespace {
constexpr char kMagic[] = "MMDC";
constexpr uint8_t kVersion = 1;
}  // namespace

Dictionary Dictionary::Build(std::span<const std::string> values, uint64_t max_entries) {
  Dictionary d;
  d.entries_.assign(values.begin(), values.end());
  std::sort(d.entries_.begin(), d.entries_.end());
  d.entries_.erase(std::unique(d.entries_.begin(), d.entries_.end()), d.entries_.end());
  if (d.entries_.size() > max_entries) {
    throw DictionaryFullError("dictionary would hold " + std::to_string(d.entries_.size()) +
                              " values, limit is " + std::to_string(max_entries));
  }
  return d;
}

std::optional<uint32_t> Dictionary::Encode(std::string_view s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s);
  if (it == entries_.end() || *it != s) return std::nullopt;
  return static_cast<uint32_t>(it - entries_.begin());
}

int64_t Dictionary::EncodeOrAbsent(std::string_view s) const {
  auto t = Encode(s);
  return t ? static_cast<int64_t>(*t) : kAbsentToken;
}

const std::string& Dictionary::Lookup(int64_t token) const {
  if (token < 0 || static_cast<uint64_t>(token) >= entries_.size()) {
    throw DecodeError("token " + std::to_string(token) + " not in dictionary of " + std::to_string(entries_.size()));
  }
  return entries_[static_cast<size_t>(token)];
}

std::string Dictionary::Serialize() const {
  std::string out;
  ByteWriter w(&out);
  w.Bytes(std::string_view(kMagic, 4));
  w.U8(kVersion);
  w.U32(static_cast<uint32_t>(entries_.size()));
  for (const auto& e : entries_) w.Str32(e);
  w.U32(Crc32(out));
  return out;
}

Dictionary Dictionary::Deserialize(std::string_view bytes) {
  if (bytes.size() < 13 || bytes.substr(0, 4) != std::string_view(kMagic, 4)) {
    throw DecodeError("bad dictionary magic");
  }
  ByteReader crc_r(bytes.substr(bytes.size() - 4), bytes.size() - 4);
  if (Crc32(bytes.substr(0, bytes.size() - 4)) != crc_r.U32()) throw DecodeError("dictionary checksum mismatch");
  ByteReader r(bytes.substr(0, bytes.size() - 4));
  r.Bytes(4);
  if (r.U8() != kVersion) throw DecodeError("unsupported dictionary version");
  const uint32_t n = r.U32();
  Dictionary d;
  d.entries_.reserve(n);
  for (uint32_t i = 0; i < n; ++i) {
    d.entries_.emplace_back(r.Str32());
    if (i > 0 && !(d.entries_[i - 1] < d.entries_[i])) throw DecodeError("dictionary entries not sorted");
  }
  if (!r.done()) throw DecodeError("trailing bytes in dictionary");
  return d;
}

void Dictionary::Save(const std::filesystem::path& path) const { WriteFileAtomic(path, Serialize()); }

Dictionary Dictionary::Load(const std::filesystem::path& path) { return Deserialize(ReadFile(path)); }

}  // namespace manimal::storage
