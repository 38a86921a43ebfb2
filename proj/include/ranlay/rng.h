// Copyright 2026 The ranlay Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef RANLAY_RNG_H_
#define RANLAY_RNG_H_

#include <cstdint>
#include <random>

namespace ranlay {

// Odd multiplier applied to the page index before mixing.
inline constexpr uint64_t kPageIndexMultiplier = 0xD1B54A32D192ED03ULL;

// SplitMix64 output function for state x:
//   z = x + 0x9E3779B97F4A7C15
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
uint64_t SplitMix64(uint64_t x);

// Per-page seed: SplitMix64(master_seed ^ (page_index * kPageIndexMultiplier)),
// arithmetic mod 2^64. A bijection in page_index for a fixed master seed.
uint64_t SeedDerive(uint64_t master_seed, uint64_t page_index);

// Random stream used by every sampling step: std::mt19937_64 with
// hand-written distributions, identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double NextDouble() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n > 0, by rejection of the biased tail.
  uint64_t UniformIndex(uint64_t n);

  // Uniform in [-half_width, half_width).
  double Symmetric(double half_width) {
    return (2.0 * NextDouble() - 1.0) * half_width;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ranlay

#endif  // RANLAY_RNG_H_
