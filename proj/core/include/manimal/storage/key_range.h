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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "manimal/common/value.h"

namespace manimal::storage {

/// Half-open interval [lo, hi) over order-preserving key encodings; a
/// missing bound is infinite.
struct KeyRange {
  std::optional<std::string> lo;
  std::optional<std::string> hi;

  bool Contains(std::string_view key) const;
  bool Empty() const { return lo && hi && *lo >= *hi; }
  bool operator==(const KeyRange&) const = default;
};

using KeyRangeSet = std::vector<KeyRange>;

/// Sorts, drops empty intervals and merges overlapping or touching ones.
KeyRangeSet Normalize(KeyRangeSet ranges);
bool Contains(const KeyRangeSet& ranges, std::string_view key);
/// Complement of a normalized set.
KeyRangeSet Complement(const KeyRangeSet& ranges);
KeyRangeSet FullRange();

std::string RangeToString(const KeyRange& r, FieldType type);

}  // namespace manimal::storage
