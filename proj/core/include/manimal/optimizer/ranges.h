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
#include <string>
#include <string_view>
#include <vector>

#include "manimal/detectors/dnf.h"
#include "manimal/storage/key_range.h"

namespace manimal::optimizer {

using storage::Complement;
using storage::Contains;
using storage::FullRange;
using storage::KeyRange;
using storage::KeyRangeSet;
using storage::Normalize;
using storage::RangeToString;

/// Key ranges covering every record on which the DNF may hold, over the
/// given field ("key" for the record key). Atoms `field op const` narrow a
/// disjunct; anything else leaves it wider. nullopt (not sargable) if some
/// disjunct does not constrain the field at all.
std::optional<KeyRangeSet> DnfToRanges(const detectors::Dnf& dnf, std::string_view field,
                                       const RecordLayout& schema);

}  // namespace manimal::optimizer
