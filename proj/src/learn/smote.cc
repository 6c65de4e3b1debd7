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

#include "revjudge/learn/smote.h"

#include <algorithm>
#include <numeric>

#include "revjudge/common/error.h"
#include "revjudge/common/random.h"
#include "revjudge/common/util.h"

namespace revjudge::learn {

SmoteResult smote(const Matrix& minority, std::size_t target_count, int k_neighbors,
                  std::uint64_t seed) {
  const std::size_t n = minority.rows;
  if (n < 2)
    throw CannotOversampleError("SMOTE needs at least 2 minority rows, got " + std::to_string(n));
  if (k_neighbors < 1) throw ArgumentError("k_neighbors must be at least 1");
  const std::size_t k = std::min<std::size_t>(k_neighbors, n - 1);

  // k nearest neighbors of every minority row, by squared distance.
  std::vector<std::vector<std::size_t>> neighbors(n);
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    const auto xi = minority.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto xj = minority.row(j);
      double d = 0.0;
      for (std::size_t c = 0; c < minority.cols; ++c) d += (xi[c] - xj[c]) * (xi[c] - xj[c]);
      dist.emplace_back(d, j);
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    for (std::size_t m = 0; m < k; ++m) neighbors[i].push_back(dist[m].second);
  }

  SmoteResult out;
  out.synthetic = Matrix(target_count, minority.cols);
  Rng rng(mix_seed(seed, 0x5307e));
  for (std::size_t s = 0; s < target_count; ++s) {
    const std::size_t i = rng.uniform_index(n);
    const std::size_t j = neighbors[i][rng.uniform_index(k)];
    const double g = rng.uniform01();
    const auto xi = minority.row(i);
    const auto xj = minority.row(j);
    auto row = out.synthetic.row(s);
    for (std::size_t c = 0; c < minority.cols; ++c) row[c] = xi[c] + g * (xj[c] - xi[c]);
    out.base.push_back(i);
    out.neighbor.push_back(j);
    out.gap.push_back(g);
  }
  return out;
}

}  // namespace revjudge::learn
