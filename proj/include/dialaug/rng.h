// Copyright 2026 The dialaug Authors.
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

#ifndef DIALAUG_RNG_H_
#define DIALAUG_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace dialaug {

// 64-bit FNV-1a. Stable across platforms and runs.
uint64_t StableHash(std::string_view s);

// Seed for a named child stream of `parent`, e.g. DeriveSeed(global, id).
uint64_t DeriveSeed(uint64_t parent, std::string_view tag);

// Seeded random stream. The integer and real mappings are implemented here
// rather than through <random> distributions so that a seed produces the
// same draws with every standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). n must be positive.
  std::size_t Index(std::size_t n);

  bool Bernoulli(double p) { return Uniform() < p; }

  // Independent stream keyed by `tag`; does not advance this stream.
  Rng Fork(std::string_view tag) const { return Rng(DeriveSeed(seed_, tag)); }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dialaug

#endif  // DIALAUG_RNG_H_
