// Copyright 2026 The coreg Authors
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

#ifndef COREG_RNG_H_
#define COREG_RNG_H_

#include <cstdint>
#include <random>
#include <vector>

#include "coreg/categorical.h"

namespace coreg {

// SplitMix64 finalizer (Steele, Lea & Flood). Used as the stable hash for
// seed derivation; its output is fixed by its definition, not by any
// standard library implementation.
std::uint64_t SplitMix64(std::uint64_t x);

// Derives an independent stream seed from a parent seed and two labels:
//   SplitMix64(SplitMix64(SplitMix64(parent) + a) + b)
// Streams for different (a, b) never depend on which other streams exist.
std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t a,
                         std::uint64_t b);

// Deterministic random stream backed by std::mt19937_64, whose output
// sequence is fully specified by the standard. Conversions to doubles and
// bounded integers are done here rather than through <random>
// distributions, whose algorithms vary between library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  // Number of 64-bit words consumed so far.
  std::uint64_t position() const { return position_; }

  std::uint64_t NextU64() {
    ++position_;
    return engine_();
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., n-1}; rejection sampling, so exactly unbiased.
  std::uint64_t UniformInt(std::uint64_t n);

  // Child stream whose seed is DeriveSeed(seed(), a, b).
  Rng Split(std::uint64_t a, std::uint64_t b = 0) const {
    return Rng(DeriveSeed(seed_, a, b));
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
};

// Draws index i with probability p[i] by inverse-CDF on one uniform.
int Sample(const Categorical& p, Rng& rng);

// Uniform random permutation of {0, ..., n-1} by Fisher-Yates.
std::vector<int> RandomPermutation(int n, Rng& rng);

}  // namespace coreg

#endif  // COREG_RNG_H_
