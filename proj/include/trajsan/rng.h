// Copyright 2026 The trajsan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRAJSAN_RNG_H_
#define TRAJSAN_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace trajsan {

// Seeded random source. Built only from standard-mandated engines so a given
// seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  // Independent stream keyed by (master seed, stream id), e.g. one per
  // trajectory so results do not depend on processing order.
  static Rng ForStream(uint64_t master_seed, uint64_t stream_id);

  uint64_t NextU64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();

  // Uniform integer in [0, n). n must be positive.
  std::size_t UniformIndex(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace trajsan

#endif  // TRAJSAN_RNG_H_
