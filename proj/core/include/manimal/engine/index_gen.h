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

#include "manimal/detectors/detectors.h"
#include "manimal/storage/catalog.h"

namespace manimal::engine {

struct IndexGenOptions {
  /// Where index and dictionary files go; defaults to the catalog's
  /// directory (or the input's when there is no catalog).
  std::filesystem::path output_dir;
  uint32_t page_size = 4096;
};

/// Throws SpecError unless the spec can be built over `schema`: at least
/// one retained field, known fields, integer delta fields, string
/// dictionary fields, and a plain index field for B+Trees.
void ValidateSpec(const detectors::IndexGenSpec& spec, const RecordLayout& schema);

/// Builds the index described by `spec` over the raw input: projects and
/// encodes fields, sorts by the index field (B+Tree) or keeps input order
/// (column group), writes atomically, reopens the result to check it, and
/// appends the entry to `catalog` when given.
storage::CatalogEntry RunIndexGen(const detectors::IndexGenSpec& spec, const std::filesystem::path& input,
                                  const storage::Catalog* catalog, const IndexGenOptions& options = {});

}  // namespace manimal::engine
