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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "manimal/analysis/usedef.h"
#include "manimal/detectors/dnf.h"

namespace manimal::detectors {

enum class OptKind : uint8_t { kSelect, kProject, kDelta, kDirectOp };

std::string_view OptKindName(OptKind k);
std::optional<OptKind> OptKindFromName(std::string_view name);

struct OptimizationDescriptor {
  OptKind kind = OptKind::kSelect;
  Dnf dnf;                              // select
  std::vector<std::string> candidates;  // select: sargable index fields, best first
  std::vector<std::string> fields;      // project: dropped; delta/directop: the fields
};

enum class IndexFormat : uint8_t { kBTree, kColumnGroup };

/// Recipe for one index-generation run. Retained fields are value fields;
/// the record key is always kept.
struct IndexGenSpec {
  std::string name;  // combined | select | project | delta | directop
  IndexFormat format = IndexFormat::kColumnGroup;
  std::optional<std::string> index_field;  // btree only
  std::vector<std::string> retained_fields;
  std::map<std::string, Codec> codecs;  // fields absent here are plain

  Codec CodecOf(const std::string& field) const;
};

struct AnalyzeOptions {
  bool safe_mode = false;
};

struct AnalysisResult {
  std::vector<OptimizationDescriptor> descriptors;
  std::vector<IndexGenSpec> specs;
  bool safe = true;                // false: some emit depends on members or impure calls
  std::vector<std::string> notes;  // why detectors bailed out

  const OptimizationDescriptor* Find(OptKind k) const;
};

/// Per-job analysis context: CFG, reaching definitions and use-def DAGs of
/// the map body.
class MapAnalysis {
 public:
  explicit MapAnalysis(const lang::TypedJob& job);

  const lang::TypedJob& job() const { return job_; }
  const analysis::Cfg& cfg() const { return cfg_; }
  const analysis::ReachingDefs& reaching() const { return rd_; }
  const std::vector<const lang::Stmt*>& emits() const { return emits_; }
  analysis::UseDefDag UseDef(const lang::Stmt& s) const;

 private:
  const lang::TypedJob& job_;
  analysis::Cfg cfg_;
  analysis::ReachingDefs rd_;
  std::vector<const lang::Stmt*> emits_;
};

/// Exact emission condition, or nullopt when selection cannot be proven
/// safe (non-functional condition, loop on an emit path, blow-up).
std::optional<Dnf> FindSelect(const MapAnalysis& a, std::string* why = nullptr);
/// Value fields the map never needs. Empty for blob-valued schemas.
std::set<std::string> FindProject(const MapAnalysis& a);
/// Integer fields (including "key") that survive projection.
std::set<std::string> FindDelta(const MapAnalysis& a, const std::set<std::string>& dropped);
/// String value fields whose every use is an equality test or the emit key.
std::set<std::string> FindDirectOp(const MapAnalysis& a);

/// Fields of the schema, plus "key", usable as a B+Tree index for `dnf`.
std::vector<std::string> SargableFields(const Dnf& dnf, const RecordLayout& schema);

AnalysisResult Analyze(const lang::TypedJob& job, const AnalyzeOptions& options = {});

/// Index specs exploiting the given descriptors: the combined spec first,
/// then one per descriptor.
std::vector<IndexGenSpec> SpecsFor(const std::vector<OptimizationDescriptor>& descriptors,
                                   const RecordLayout& schema);

/// Checks that descriptors only name schema fields and that select atoms
/// typecheck over (k, v). Throws SpecError.
void ValidateDescriptors(const std::vector<OptimizationDescriptor>& descriptors, const RecordLayout& schema);

}  // namespace manimal::detectors
