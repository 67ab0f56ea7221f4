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

#include <string>
#include <vector>

#include "json.hpp"
#include "manimal/detectors/detectors.h"

namespace manimal::detectors {

// Canonical JSON forms. Keys are emitted sorted. A DNF is an array of
// disjuncts, each an array of atom strings in DSL syntax over `k` and `v`:
// TRUE is [[]], FALSE is [].

nlohmann::json DnfToJson(const Dnf& dnf);
Dnf DnfFromJson(const nlohmann::json& j);

nlohmann::json DescriptorToJson(const OptimizationDescriptor& d);
OptimizationDescriptor DescriptorFromJson(const nlohmann::json& j);

nlohmann::json SpecToJson(const IndexGenSpec& s);
IndexGenSpec SpecFromJson(const nlohmann::json& j);

/// {"job", "schema", "safe", "notes", "descriptors", "indexSpecs"}.
nlohmann::json AnalysisToJson(const AnalysisResult& r, const lang::TypedJob& job);

/// Accepts an analysis document or a bare descriptor array. Throws
/// SpecError on malformed input.
std::vector<OptimizationDescriptor> DescriptorsFromDocument(const nlohmann::json& j);

}  // namespace manimal::detectors
