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
#include <functional>
#include <string>
#include <vector>

#include "manimal/common/value.h"

namespace manimal::workload {

using RecordSink = std::function<void(Record&&)>;

/// Unique pages. Key is a 10-byte page id; rank is uniform in
/// [rank_min, rank_max]; content averages content_size bytes (±10%).
struct WebPagesSpec {
  uint64_t n = 0;
  uint32_t content_size = 510;
  uint32_t url_length = 30;
  int32_t rank_min = 1;
  int32_t rank_max = 100;
  uint64_t seed = 1;
};

/// Visit log over a URL pool. Keys are sequential, destURL is a Zipfian
/// draw from the pool, visitDate is non-decreasing epoch days.
struct UserVisitsSpec {
  uint64_t n = 0;
  std::vector<std::string> url_pool;
  double theta = 0.99;
  uint64_t seed = 2;
};

/// Opaque tuples keyed by an i32 score uniform in [0, key_max).
struct TuplesSpec {
  uint64_t n = 0;
  uint32_t tuple_size = 64;
  int32_t key_max = 10000;
  uint64_t seed = 3;
};

/// Short text documents over a small vocabulary.
struct DocumentsSpec {
  uint64_t n = 0;
  uint32_t words = 24;
  uint64_t seed = 4;
};

RecordLayout WebPagesLayout();
RecordLayout UserVisitsLayout();
RecordLayout TuplesLayout();
RecordLayout DocumentsLayout();

void GenWebPages(const WebPagesSpec& spec, const RecordSink& sink);
/// Throws EmptyPoolError when n > 0 and the pool is empty.
void GenUserVisits(const UserVisitsSpec& spec, const RecordSink& sink);
void GenTuples(const TuplesSpec& spec, const RecordSink& sink);
void GenDocuments(const DocumentsSpec& spec, const RecordSink& sink);

void WriteWebPages(const WebPagesSpec& spec, const std::filesystem::path& path);
void WriteUserVisits(const UserVisitsSpec& spec, const std::filesystem::path& path);
void WriteTuples(const TuplesSpec& spec, const std::filesystem::path& path);
void WriteDocuments(const DocumentsSpec& spec, const std::filesystem::path& path);

/// The url column of a WebPages file, in file order.
std::vector<std::string> LoadUrlPool(const std::filesystem::path& webpages);

}  // namespace manimal::workload
