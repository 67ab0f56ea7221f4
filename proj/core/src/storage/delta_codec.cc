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

#include "manimal/storage/delta_codec.h"

#include "manimal/common/error.h"
#include "manimal/storage/byte_io.h"

namespace manimal::storage {

void DeltaEncodeTo(std::span<const int64_t> values, std::string* out) {
  ByteWriter w(out);
  uint64_t prev = 0;
  for (int64_t v : values) {
    const uint64_t cur = static_cast<uint64_t>(v);
    w.Varint(ZigZag(static_cast<int64_t>(cur - prev)));
    prev = cur;
  }
}

std::string DeltaEncode(std::span<const int64_t> values) {
  std::string out;
  DeltaEncodeTo(values, &out);
  return out;
}

std::vector<int64_t> DeltaDecode(std::string_view payload, int64_t expected) {
  ByteReader r(payload);
  std::vector<int64_t> out;
  if (expected > 0) out.reserve(static_cast<size_t>(expected));
  uint64_t prev = 0;
  while (!r.done()) {
    prev += static_cast<uint64_t>(UnZigZag(r.Varint()));
    out.push_back(static_cast<int64_t>(prev));
  }
  if (expected >= 0 && static_cast<int64_t>(out.size()) != expected) {
    throw DecodeError("delta column holds " + std::to_string(out.size()) + " values, expected " +
                      std::to_string(expected));
  }
  return out;
}

}  // namespace manimal::storage
