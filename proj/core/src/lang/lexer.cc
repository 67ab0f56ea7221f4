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

#include "manimal/lang/lexer.h"

#include <array>
#include <cctype>
#include <limits>

namespace manimal::lang {

namespace {

constexpr std::array<std::string_view, 22> kKeywords = {
    "schema", "job",  "on",    "sorted", "key",  "members", "map",  "reduce",
    "let",    "if",   "else",  "while",  "emit", "log",     "true", "false",
    "table",  "bool", "i32",   "i64",    "str",  "blob",
};

// Longest spellings first so "<=" wins over "<".
constexpr std::array<std::string_view, 24> kPuncts = {
    "++", "<=", ">=", "==", "!=", "&&", "||", "{", "}", "(", ")", ";",
    ",",  ":",  ".",  "=",  "<",  ">",  "+",  "-", "*", "/", "%", "!",
};

}  // namespace

bool IsKeyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> Tokenize(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  SourceLoc loc;

  auto advance = [&](size_t n) {
    for (size_t j = 0; j < n && i < src.size(); ++j, ++i) {
      if (src[i] == '\n') {
        ++loc.line;
        loc.column = 1;
      } else {
        ++loc.column;
      }
    }
  };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.loc = loc;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.text = std::string(src.substr(i, j - i));
      tok.kind = IsKeyword(tok.text) ? TokenKind::kKeyword : TokenKind::kIdent;
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      uint64_t v = 0;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        const uint64_t digit = static_cast<uint64_t>(src[j] - '0');
        // One past INT64_MAX is allowed so that -9223372036854775808 can be spelled.
        if (v > (static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) + 1 - digit) / 10) {
          throw ParseError(loc, "integer literal out of range");
        }
        v = v * 10 + digit;
        ++j;
      }
      tok.kind = TokenKind::kInt;
      tok.text = std::string(src.substr(i, j - i));
      tok.int_value = static_cast<int64_t>(v);
      advance(j - i);
    } else if (c == '"') {
      std::string body;
      size_t j = i + 1;
      bool closed = false;
      while (j < src.size()) {
        char ch = src[j];
        if (ch == '"') {
          closed = true;
          ++j;
          break;
        }
        if (ch == '\n') break;
        if (ch == '\\') {
          if (j + 1 >= src.size()) break;
          const char esc = src[j + 1];
          switch (esc) {
            case 'n': body.push_back('\n'); break;
            case 't': body.push_back('\t'); break;
            case '0': body.push_back('\0'); break;
            case '\\': body.push_back('\\'); break;
            case '"': body.push_back('"'); break;
            default: throw ParseError(loc, std::string("unknown escape \\") + esc);
          }
          j += 2;
          continue;
        }
        body.push_back(ch);
        ++j;
      }
      if (!closed) throw ParseError(loc, "unterminated string literal");
      tok.kind = TokenKind::kString;
      tok.text = std::move(body);
      advance(j - i);
    } else {
      bool matched = false;
      for (auto p : kPuncts) {
        if (src.substr(i, p.size()) == p) {
          tok.kind = TokenKind::kPunct;
          tok.text = std::string(p);
          advance(p.size());
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = TokenKind::kEnd;
  end.loc = loc;
  out.push_back(end);
  return out;
}

}  // namespace manimal::lang
