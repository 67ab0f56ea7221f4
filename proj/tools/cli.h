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

#include <iosfwd>

namespace manimal::cli {

/// Parses argv and runs one subcommand. Returns the process exit code:
/// 0 success, 1 usage error, 2 plan error, 3 data error.
int Dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace manimal::cli
