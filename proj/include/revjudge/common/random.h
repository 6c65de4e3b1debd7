// Copyright 2026 The revjudge Authors.
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

#ifndef REVJUDGE_COMMON_RANDOM_H_
#define REVJUDGE_COMMON_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace revjudge {

// xoshiro256** seeded through SplitMix64. Every draw is defined here rather
// than through <random> distributions so seeded runs are bit-identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01();
  // Uniform in [0, bound). bound must be > 0.
  std::size_t uniform_index(std::size_t bound);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i)
      std::swap(items[i - 1], items[uniform_index(i)]);
  }

 private:
  std::uint64_t s_[4];
};

}  // namespace revjudge

#endif  // REVJUDGE_COMMON_RANDOM_H_
