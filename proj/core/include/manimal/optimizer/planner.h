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
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "manimal/detectors/detectors.h"
#include "manimal/optimizer/ranges.h"
#include "manimal/storage/catalog.h"

namespace manimal::optimizer {

using detectors::OptKind;

enum class InputSource : uint8_t { kRaw, kIndex };

/// What the execution fabric should read and which optimizations are live.
struct ExecutionDescriptor {
  InputSource source = InputSource::kRaw;
  std::string input_path;
  std::optional<storage::CatalogEntry> entry;  // set iff source == kIndex
  std::optional<KeyRangeSet> ranges;           // btree entries only
  std::set<OptKind> active;
  std::map<std::string, std::string> dictionaries;  // direct-op field -> dictionary path
  std::optional<detectors::IndexGenSpec> suggestion;  // raw fallback: spec that would help
  std::vector<std::string> notes;

  bool Active(OptKind k) const { return active.count(k) != 0; }
};

struct InputId {
  std::string path;
  std::string sha256;
};

struct PlanOptions {
  bool allow_select = true;
};

/// Picks the catalog entry for `input` that enables the best set of
/// optimizations. Rank: select, project, directop, delta; then how many are
/// active; then the smallest index. An entry is usable only if each of its
/// transformations (clustering, dropped fields, codecs) is sanctioned by a
/// descriptor. Throws StaleIndexError if the chosen entry was built from
/// different content.
ExecutionDescriptor Plan(const std::vector<detectors::OptimizationDescriptor>& descriptors,
                         const std::vector<storage::CatalogEntry>& catalog, const InputId& input,
                         const RecordLayout& schema, const PlanOptions& options = {});

/// Canonical --explain form.
nlohmann::json ExecutionDescriptorToJson(const ExecutionDescriptor& d, const RecordLayout& schema);

}  // namespace manimal::optimizer
