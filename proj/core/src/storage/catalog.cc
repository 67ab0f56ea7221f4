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

#include "manimal/storage/catalog.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"

namespace manimal::storage {

using nlohmann::json;

bool CatalogEntry::Has(std::string_view k) const {
  return std::find(kind.begin(), kind.end(), k) != kind.end();
}

json CatalogEntryToJson(const CatalogEntry& e) {
  json codecs = json::object();
  for (const auto& [f, c] : e.codecs) codecs[f] = std::string(CodecName(c));
  json j = {
      {"inputId", {{"path", e.input_path}, {"sha256", e.input_sha256}}},
      {"spec", e.spec_name},
      {"kind", e.kind},
      {"format", e.format},
      {"indexField", e.index_field ? json(*e.index_field) : json(nullptr)},
      {"retainedFields", e.retained_fields},
      {"codecs", codecs},
      {"indexPath", e.index_path},
      {"dictionaries", e.dictionaries},
      {"sizeBytes", e.size_bytes},
      {"createdAt", e.created_at},
  };
  return j;
}

CatalogEntry CatalogEntryFromJson(const json& j) {
  try {
    CatalogEntry e;
    e.input_path = j.at("inputId").at("path").get<std::string>();
    e.input_sha256 = j.at("inputId").at("sha256").get<std::string>();
    e.spec_name = j.value("spec", "");
    e.kind = j.at("kind").get<std::vector<std::string>>();
    e.format = j.at("format").get<std::string>();
    if (e.format != "btree" && e.format != "colgroup") throw SpecError("unknown index format " + e.format);
    if (j.contains("indexField") && !j.at("indexField").is_null()) e.index_field = j.at("indexField").get<std::string>();
    e.retained_fields = j.at("retainedFields").get<std::vector<std::string>>();
    for (const auto& [f, c] : j.at("codecs").items()) {
      auto codec = CodecFromName(c.get<std::string>());
      if (!codec) throw SpecError("unknown codec for " + f);
      e.codecs[f] = *codec;
    }
    e.index_path = j.at("indexPath").get<std::string>();
    e.dictionaries = j.value("dictionaries", std::map<std::string, std::string>{});
    e.size_bytes = j.at("sizeBytes").get<uint64_t>();
    e.created_at = j.value("createdAt", "");
    return e;
  } catch (const json::exception& ex) {
    throw SpecError(std::string("malformed catalog entry: ") + ex.what());
  }
}

CatalogLoad Catalog::Load() const {
  CatalogLoad out;
  std::ifstream in(path_);
  if (!in) {
    if (std::filesystem::exists(path_)) throw IoError("cannot read catalog " + path_.string());
    return out;
  }
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.entries.push_back(CatalogEntryFromJson(json::parse(line)));
    } catch (const std::exception& ex) {
      out.malformed.push_back("line " + std::to_string(n) + ": " + ex.what());
    }
  }
  return out;
}

void Catalog::Append(const CatalogEntry& entry) const {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  const std::string lock_path = path_.string() + ".lock";
  const int lock_fd = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (lock_fd < 0) throw LockError("cannot open " + lock_path + ": " + std::strerror(errno));
  if (::flock(lock_fd, LOCK_EX) != 0) {
    const int err = errno;
    ::close(lock_fd);
    throw LockError("cannot lock " + lock_path + ": " + std::strerror(err));
  }
  const std::string line = CatalogEntryToJson(entry).dump() + "\n";
  const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  bool ok = fd >= 0;
  if (ok) {
    ok = ::write(fd, line.data(), line.size()) == static_cast<ssize_t>(line.size()) && ::fsync(fd) == 0;
    ::close(fd);
  }
  ::flock(lock_fd, LOCK_UN);
  ::close(lock_fd);
  if (!ok) throw IoError("cannot append to catalog " + path_.string());
}

VerifyResult Verify(const CatalogEntry& entry) {
  if (!std::filesystem::exists(entry.input_path)) return {false, "input " + entry.input_path + " is missing"};
  if (!std::filesystem::exists(entry.index_path)) return {false, "index " + entry.index_path + " is missing"};
  for (const auto& [f, p] : entry.dictionaries) {
    if (!std::filesystem::exists(p)) return {false, "dictionary for " + f + " is missing"};
  }
  const std::string sha = Sha256File(entry.input_path);
  if (sha != entry.input_sha256) return {false, "hash mismatch: input now " + sha};
  return {true, ""};
}

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace manimal::storage
