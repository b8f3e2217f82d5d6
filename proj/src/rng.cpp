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

#include "scl/rng.hpp"

#include <cmath>
#include <numbers>

namespace scl {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ stream)) {}

std::uint64_t CounterRng::bits(std::uint64_t slot) const {
  return splitmix64(key_ ^ splitmix64(slot));
}

double CounterRng::uniform(std::uint64_t slot) const {
  return static_cast<double>(bits(slot) >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t slot, std::uint64_t m) const {
  // Rejection keeps the result exactly uniform; resample on a derived slot.
  const std::uint64_t limit = ~0ULL - (~0ULL % m);
  std::uint64_t x = bits(slot);
  std::uint64_t k = 1;
  while (x >= limit) x = splitmix64(bits(slot) + k++);
  return x % m;
}

double SeqRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace scl
