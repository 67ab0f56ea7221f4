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
#include <string>
#include <string_view>
#include <vector>

#include "manimal/common/error.h"

namespace manimal::lang {

enum class TokenKind : uint8_t { kIdent, kKeyword, kInt, kString, kPunct, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // identifier/keyword/punctuation spelling, decoded string body
  int64_t int_value = 0;
  SourceLoc loc;
};

/// Splits MiniMap source into tokens. Whitespace and `//` comments are skipped.
std::vector<Token> Tokenize(std::string_view source);

bool IsKeyword(std::string_view word);

}  // namespace manimal::lang
