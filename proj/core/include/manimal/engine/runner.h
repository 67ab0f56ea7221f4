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
#include <string>

#include "json.hpp"
#include "manimal/engine/interpreter.h"
#include "manimal/optimizer/planner.h"

namespace manimal::engine {

struct RunOptions {
  int reducers = 1;
  int threads = 0;  // 0: one per hardware thread
  size_t split_records = 4096;
  InterpreterOptions interpreter;
  LogFn log;  // receives log() lines in input order
};

struct ExecutionStats {
  uint64_t bytes_read = 0;
  uint64_t records_scanned = 0;
  uint64_t map_invocations = 0;
  uint64_t pairs_emitted = 0;
  uint64_t shuffle_bytes = 0;
  uint64_t reduce_groups = 0;
  uint64_t output_records = 0;
  uint64_t wall_millis = 0;
  std::string output_digest;  // order-insensitive SHA-256 of the output records
};

nlohmann::json StatsToJson(const ExecutionStats& s);

/// Runs map, shuffle and reduce over the planned input and writes the
/// output RecordFile (reduce key plus "value"). Direct-op plans run the
/// token-rewritten job and translate token keys back to strings.
ExecutionStats RunJob(const lang::TypedJob& job, const optimizer::ExecutionDescriptor& plan,
                      const std::filesystem::path& output, const RunOptions& options = {});

/// Order-insensitive digest of a record multiset.
std::string CanonicalDigest(const RecordLayout& layout, const std::vector<Record>& records);

}  // namespace manimal::engine
