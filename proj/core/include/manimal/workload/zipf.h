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
#include <random>

namespace manimal::workload {

/// Seeded 64-bit Mersenne Twister with platform-independent helpers (the
/// std distributions are not bit-stable across standard libraries).
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t Next() { return gen_(); }
  /// Uniform in [0, 1).
  double Unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi], inclusive.
  int64_t Range(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(span == 0 ? gen_() : gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

/// Zipfian draw over [0, n) with exponent theta (Gray et al., "Quickly
/// generating billion-record synthetic databases"): item 0 is the most
/// popular.
class Zipf {
 public:
  Zipf(uint64_t n, double theta = 0.99);

  uint64_t Sample(Rng& rng) const;
  uint64_t n() const { return n_; }

 private:
  uint64_t n_;
  double theta_;
  double alpha_;
  double zetan_;
  double eta_;
};

}  // namespace manimal::workload
