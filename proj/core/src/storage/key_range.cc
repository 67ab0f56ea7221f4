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

#include "manimal/storage/key_range.h"

#include <algorithm>

#include "manimal/storage/key_codec.h"

namespace manimal::storage {

namespace {

bool LoLess(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a) return b.has_value();
  if (!b) return false;
  return *a < *b;
}

}  // namespace

bool KeyRange::Contains(std::string_view key) const {
  if (lo && key < std::string_view(*lo)) return false;
  if (hi && key >= std::string_view(*hi)) return false;
  return true;
}

KeyRangeSet Normalize(KeyRangeSet ranges) {
  std::erase_if(ranges, [](const KeyRange& r) { return r.Empty(); });
  std::sort(ranges.begin(), ranges.end(), [](const KeyRange& a, const KeyRange& b) { return LoLess(a.lo, b.lo); });
  KeyRangeSet out;
  for (auto& r : ranges) {
    if (!out.empty()) {
      KeyRange& cur = out.back();
      const bool touches = !cur.hi || !r.lo || *r.lo <= *cur.hi;
      if (touches) {
        if (cur.hi && (!r.hi || *r.hi > *cur.hi)) cur.hi = r.hi;
        continue;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool Contains(const KeyRangeSet& ranges, std::string_view key) {
  for (const auto& r : ranges) {
    if (r.Contains(key)) return true;
  }
  return false;
}

KeyRangeSet FullRange() { return {KeyRange{}}; }

KeyRangeSet Complement(const KeyRangeSet& ranges) {
  KeyRangeSet out;
  std::optional<std::string> cursor;  // lower bound of the next gap; absent = -inf
  bool at_start = true;
  for (const auto& r : Normalize(ranges)) {
    if (r.lo && (at_start || (cursor && *cursor < *r.lo))) out.push_back(KeyRange{cursor, r.lo});
    at_start = false;
    if (!r.hi) return Normalize(std::move(out));
    cursor = r.hi;
  }
  out.push_back(KeyRange{cursor, std::nullopt});
  return Normalize(std::move(out));
}

std::string RangeToString(const KeyRange& r, FieldType type) {
  auto show = [&](const std::optional<std::string>& b, const char* inf) {
    if (!b) return std::string(inf);
    if (type == FieldType::kStr || type == FieldType::kBlob) return "\"" + *b + "\"";
    return ValueToString(storage::DecodeKey(*b, type));
  };
  return "[" + show(r.lo, "-inf") + ", " + show(r.hi, "+inf") + ")";
}

}  // namespace manimal::storage
