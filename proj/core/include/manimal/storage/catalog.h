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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "manimal/common/value.h"

namespace manimal::storage {

/// One built index. `kind` lists the optimizations the index enables
/// (select, project, delta, directop).
struct CatalogEntry {
  std::string input_path;
  std::string input_sha256;
  std::string spec_name;
  std::vector<std::string> kind;
  std::string format;  // "btree" | "colgroup"
  std::optional<std::string> index_field;
  std::vector<std::string> retained_fields;
  std::map<std::string, Codec> codecs;
  std::string index_path;
  std::map<std::string, std::string> dictionaries;  // field -> dictionary file
  uint64_t size_bytes = 0;
  std::string created_at;  // UTC, ISO-8601

  bool Has(std::string_view k) const;
  bool operator==(const CatalogEntry&) const = default;
};

nlohmann::json CatalogEntryToJson(const CatalogEntry& e);
/// Throws SpecError on missing or mistyped members.
CatalogEntry CatalogEntryFromJson(const nlohmann::json& j);

struct CatalogLoad {
  std::vector<CatalogEntry> entries;
  std::vector<std::string> malformed;  // "line N: reason"
};

/// JSON-lines registry of built indexes. Readers need no lock; appends hold
/// an exclusive flock on "<path>.lock" and write one whole line.
class Catalog {
 public:
  explicit Catalog(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }
  /// A missing file is an empty catalog.
  CatalogLoad Load() const;
  void Append(const CatalogEntry& entry) const;

 private:
  std::filesystem::path path_;
};

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

/// Rehashes the input and checks that the index and dictionaries exist.
VerifyResult Verify(const CatalogEntry& entry);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string UtcNow();

}  // namespace manimal::storage
