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

#include <functional>

#include "manimal/optimizer/planner.h"
#include "manimal/storage/btree.h"

namespace manimal::engine {

using RecordVisitor = std::function<void(Record&&)>;

/// Streams the input chosen by the plan as records of `schema` (the job's
/// input layout after any direct-op rewrite). Fields an index dropped come
/// back as type defaults; the map never reads them. Throws
/// PlanMismatchError when the stored layout disagrees with the schema.
void ScanInput(const optimizer::ExecutionDescriptor& plan, const RecordLayout& schema, const RecordVisitor& visit,
               storage::ScanStats* stats);

/// Records in the input file, from its footer (raw) or header (index).
uint64_t InputRecordCount(const std::filesystem::path& raw_path);

}  // namespace manimal::engine
