// Copyright 2026 The CRGC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <algorithm>
#include <random>
#include <vector>

namespace crgc {

// Portable seeded sampling. std::mt19937_64's output sequence is fixed by the
// standard, but the std:: distributions are not, so draws go through the
// helpers below:
//   - uniform_below(bound): rejection sampling on raw 64-bit outputs, drawing
//     again while the value falls in the top 2^64 mod bound values;
//   - sample_without_replacement: partial Fisher-Yates over a copy of the
//     input, swapping position i with i + uniform_below(size - i).

// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
std::vector<T> sample_without_replacement(std::mt19937_64& rng, std::vector<T> items,
                                          std::size_t count) {
  for (std::size_t i = 0; i < count && i < items.size(); ++i) {
    const std::size_t j = i + uniform_below(rng, items.size() - i);
    std::swap(items[i], items[j]);
  }
  items.resize(std::min(count, items.size()));
  return items;
}

}  // namespace crgc
