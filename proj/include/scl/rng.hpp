// Copyright 2026 The scl Authors
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

namespace scl {

// Counter-based generator: every draw is a pure function of
// (seed, stream, slot), so samples can be produced in any order.
// Mixing is SplitMix64 applied to a chained key.
std::uint64_t splitmix64(std::uint64_t x);

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t bits(std::uint64_t slot) const;
  // Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t slot) const;
  // Uniform integer in [0, m).
  std::uint64_t below(std::uint64_t slot, std::uint64_t m) const;

 private:
  std::uint64_t key_;
};

// Sequential view over a CounterRng, for generators that do not need
// random access (circuit and gate generation).
class SeqRng {
 public:
  SeqRng(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}
  double uniform() { return rng_.uniform(slot_++); }
  std::uint64_t below(std::uint64_t m) { return rng_.below(slot_++, m); }
  // Standard normal via Box-Muller.
  double normal();

 private:
  CounterRng rng_;
  std::uint64_t slot_ = 0;
};

}  // namespace scl
