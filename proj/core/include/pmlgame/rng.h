//
// Copyright 2026 The pmlgame Authors
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
//

#ifndef PMLGAME_RNG_H_
#define PMLGAME_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace pmlgame {

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; every distribution below is computed
// by hand from raw 64-bit words so results do not depend on the standard
// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double Uniform01();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Laplace(0, scale) by inverse CDF; scale == 0 yields 0.
  double Laplace(double scale);

  // Box-Muller without caching, two uniforms per draw.
  double StandardNormal();

  double Exponential();

  // Index drawn proportionally to the given nonnegative weights.
  std::size_t Categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t MixSeed(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

// Order-sensitive digest of a seed list, printed alongside emitted data.
std::uint64_t SeedHash(std::span<const std::uint64_t> seeds);

}  // namespace pmlgame

#endif  // PMLGAME_RNG_H_
