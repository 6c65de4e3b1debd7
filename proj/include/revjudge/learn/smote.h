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

#ifndef REVJUDGE_LEARN_SMOTE_H_
#define REVJUDGE_LEARN_SMOTE_H_

#include <cstdint>
#include <vector>

#include "revjudge/learn/matrix.h"

namespace revjudge::learn {

inline constexpr int kDefaultSmoteNeighbors = 5;

struct SmoteResult {
  Matrix synthetic;
  // Provenance of every synthetic row: base sample, neighbor, gap in [0,1).
  std::vector<std::size_t> base;
  std::vector<std::size_t> neighbor;
  std::vector<double> gap;
};

// target_count synthetic rows, each base + gap * (neighbor - base) where the
// neighbor is one of the k nearest minority rows (Euclidean, ties to the
// lower index). k is clamped to minority.rows - 1.
SmoteResult smote(const Matrix& minority, std::size_t target_count,
                  int k_neighbors = kDefaultSmoteNeighbors, std::uint64_t seed = 0);

}  // namespace revjudge::learn

#endif  // REVJUDGE_LEARN_SMOTE_H_
