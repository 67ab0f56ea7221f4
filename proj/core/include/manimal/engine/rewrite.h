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
#include <string>

#include "manimal/lang/typecheck.h"
#include "manimal/storage/dictionary.h"

namespace manimal::engine {

struct RewrittenJob {
  lang::TypedJob job;
  /// Set when the output key is a token of this field's dictionary and must
  /// be translated back to the string on output.
  std::optional<std::string> output_key_field;
};

/// Makes the job operate on dictionary tokens: each listed field becomes a
/// token column and string literals compared against it become token
/// literals (kAbsentToken when the dictionary lacks the string). Throws
/// RewriteError if the result no longer typechecks, i.e. the field is used
/// in a way equality on tokens cannot express.
RewrittenJob RewriteForDirectOp(const lang::TypedJob& job,
                                const std::map<std::string, storage::Dictionary>& dictionaries);

}  // namespace manimal::engine
