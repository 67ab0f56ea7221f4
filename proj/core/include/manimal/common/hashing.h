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
#include <span>
#include <string>
#include <string_view>

namespace manimal {

/// Running CRC-32 (zlib polynomial). Pass the previous value to continue.
uint32_t Crc32(std::span<const uint8_t> bytes, uint32_t crc = 0);
uint32_t Crc32(std::string_view bytes, uint32_t crc = 0);

/// Lower-case hex SHA-256 of a whole file.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view bytes);

/// Stable 64-bit FNV-1a; used for shuffle partitioning so runs are reproducible.
uint64_t Fnv1a64(std::string_view bytes);

}  // namespace manimal
