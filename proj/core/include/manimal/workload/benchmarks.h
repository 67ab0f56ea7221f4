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
#include <string>
#include <vector>

#include "manimal/detectors/detectors.h"

namespace manimal::workload {

/// Ground truth for one (benchmark, optimization) cell.
enum class Presence : uint8_t { kPresent, kNotPresent };

/// Analyzer outcome against ground truth.
enum class Detection : uint8_t { kDetected, kUndetected, kNotPresent, kFalsePositive };

std::string_view DetectionName(Detection d);
Detection Classify(Presence truth, bool detected);

/// The optimizations reported in the recall matrix, in column order.
inline constexpr std::array<detectors::OptKind, 3> kMatrixKinds = {
    detectors::OptKind::kSelect, detectors::OptKind::kProject, detectors::OptKind::kDelta};

enum class Dataset : uint8_t { kTuples, kUserVisits, kDocuments, kWebPages };

struct BenchmarkModel {
  std::string name;
  std::string description;
  Dataset dataset;
  std::string source;  // MiniMap program
  std::array<Presence, 3> truth;  // per kMatrixKinds
};

/// Thresholds the models embed; chosen by the suite from generated data.
struct BenchmarkParams {
  int64_t b1_threshold = 9997;  // keys above it pass (tuples keyed 0..9999)
  int64_t b3_date_lo = 14000;
  int64_t b3_date_hi = 14000;
};

/// Schema declaration in MiniMap syntax for a layout.
std::string SchemaDecl(const RecordLayout& layout);

/// B1 selection over opaque tuples, B2 aggregation, B3 date-window filter
/// feeding a join tag, B4 text scan filtered through a member table.
std::vector<BenchmarkModel> BenchmarkModels(const BenchmarkParams& params = {});

/// The member-counter program the analyzer must refuse.
std::string CounterJobSource();
/// A filter routed through table_get, also refused.
std::string TableFilterJobSource();
/// Selection on WebPages rank: `if (v.rank > threshold) emit(v.url, v.rank)`.
std::string RankSelectJobSource(int64_t threshold, bool with_log = false);
/// Projection on WebPages: emits url and rank, never reads content.
std::string ProjectJobSource();
/// Sum of duration grouped by destURL (direct-operation candidate).
std::string DurationByUrlJobSource();

}  // namespace manimal::workload
