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

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "manimal/engine/runner.h"
#include "manimal/workload/benchmarks.h"

namespace manimal::workload {

enum class Scale : uint8_t { kTiny, kSmall };

std::optional<Scale> ScaleFromName(std::string_view name);
std::string_view ScaleName(Scale s);

struct BenchResult {
  std::string name;
  std::string description;
  std::array<Detection, 3> cells{};
  std::vector<std::string> descriptors;  // kinds the analyzer reported
  std::vector<std::string> active;       // optimizations the plan used
  std::string spec;                      // index built, if any
  uint64_t total_records = 0;
  uint64_t input_bytes = 0;
  uint64_t index_bytes = 0;
  engine::ExecutionStats optimized;
  engine::ExecutionStats baseline;
  bool outputs_match = false;
  std::string error;  // set when the benchmark failed; the suite goes on
};

struct SuiteReport {
  Scale scale = Scale::kTiny;
  std::vector<BenchResult> results;
  int detected = 0;
  int undetected = 0;
  int not_present = 0;
  int false_positives = 0;
  uint64_t wall_millis = 0;
};

struct SuiteOptions {
  int threads = 0;
  int reducers = 2;
};

/// Generates data under `workdir`, then analyzes, indexes and runs every
/// benchmark model optimized and unoptimized.
SuiteReport RunSuite(Scale scale, const std::filesystem::path& workdir, const SuiteOptions& options = {});

/// Aligned text: the detection matrix followed by the performance table.
std::string ReportText(const SuiteReport& r);
nlohmann::json ReportJson(const SuiteReport& r);

/// Parses and typechecks MiniMap source.
lang::TypedJob CompileJob(std::string_view source);

}  // namespace manimal::workload
