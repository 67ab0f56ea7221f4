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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace manimal::storage {

/// Token given to strings absent from a dictionary; equal to no real token.
inline constexpr int64_t kAbsentToken = -1;

/// Bijection between the distinct strings of a column and dense tokens
/// 0..n-1, assigned in sorted (bytewise) order.
class Dictionary {
 public:
  static constexpr uint64_t kMaxEntries = uint64_t{1} << 32;

  Dictionary() = default;
  /// Throws DictionaryFullError past `max_entries` distinct values.
  static Dictionary Build(std::span<const std::string> values, uint64_t max_entries = kMaxEntries);

  std::optional<uint32_t> Encode(std::string_view s) const;
  /// Token for s, or kAbsentToken.
  int64_t EncodeOrAbsent(std::string_view s) const;
  const std::string& Lookup(int64_t token) const;
  size_t size() const { return entries_.size(); }
  const std::vector<std::string>& entries() const { return entries_; }

  std::string Serialize() const;
  static Dictionary Deserialize(std::string_view bytes);
  void Save(const std::filesystem::path& path) const;
  static Dictionary Load(const std::filesystem::path& path);

 private:
  std::vector<std::string> entries_;
};

}  // namespace manimal::storage
