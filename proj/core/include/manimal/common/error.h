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
#include <stdexcept>
#include <string>

namespace manimal {

/// Broad failure class. The CLI maps these onto process exit codes:
/// usage errors exit 1, plan errors 2, data errors 3.
enum class ErrorCategory : uint8_t { kUsage, kPlan, kData };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

struct SourceLoc {
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceLoc loc, const std::string& message);
  SourceLoc loc() const noexcept { return loc_; }
  const std::string& message() const noexcept { return message_; }

 private:
  SourceLoc loc_;
  std::string message_;
};

class TypeError : public Error {
 public:
  TypeError(int stmt_id, const std::string& message);
  int stmt_id() const noexcept { return stmt_id_; }

 private:
  int stmt_id_;
};

/// Runtime failure inside map() or reduce(), e.g. division by zero.
class JobError : public Error {
 public:
  JobError(int stmt_id, const std::string& message);
  int stmt_id() const noexcept { return stmt_id_; }

 private:
  int stmt_id_;
};

class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& message) : Error(ErrorCategory::kData, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorCategory::kData, message) {}
};

class UnsortedInputError : public Error {
 public:
  explicit UnsortedInputError(const std::string& message) : Error(ErrorCategory::kData, message) {}
};

class DictionaryFullError : public Error {
 public:
  explicit DictionaryFullError(const std::string& message) : Error(ErrorCategory::kData, message) {}
};

class LockError : public Error {
 public:
  explicit LockError(const std::string& message) : Error(ErrorCategory::kData, message) {}
};

class StaleIndexError : public Error {
 public:
  explicit StaleIndexError(const std::string& message) : Error(ErrorCategory::kPlan, message) {}
};

class PlanMismatchError : public Error {
 public:
  explicit PlanMismatchError(const std::string& message) : Error(ErrorCategory::kPlan, message) {}
};

class RewriteError : public Error {
 public:
  explicit RewriteError(const std::string& message) : Error(ErrorCategory::kPlan, message) {}
};

/// Invalid descriptor or index-generation spec (e.g. references unknown fields).
class SpecError : public Error {
 public:
  explicit SpecError(const std::string& message) : Error(ErrorCategory::kPlan, message) {}
};

class EmptyPoolError : public Error {
 public:
  explicit EmptyPoolError(const std::string& message) : Error(ErrorCategory::kData, message) {}
};

}  // namespace manimal
