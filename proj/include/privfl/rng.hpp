// Copyright 2026 The privfl-lab Authors
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

#ifndef PRIVFL_RNG_HPP
#define PRIVFL_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace privfl {

// std::uniform_int_distribution is implementation-defined, which would break
// the byte-identical replay contract across standard libraries. Everything
// random in this library goes through these helpers over std::mt19937_64
// (whose output is pinned by the standard).

// Unbiased draw from {0, ..., bound - 1} by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

template <typename T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

// SplitMix64 finalizer; a 64-bit bijection.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Keyed mix of master seed and trial index. Injective in the index for any
// fixed master (odd multiplier, then a bijective finalizer), so trials can
// replay independently in any order or in parallel.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  return splitmix64(master_seed ^ (0xA0761D6478BD642FULL * (trial_index + 1)));
}

}  // namespace privfl

#endif  // PRIVFL_RNG_HPP
