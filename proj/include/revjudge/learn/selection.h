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

#ifndef REVJUDGE_LEARN_SELECTION_H_
#define REVJUDGE_LEARN_SELECTION_H_

#include <cstdint>
#include <vector>

#include "revjudge/corpus/types.h"
#include "revjudge/learn/matrix.h"

namespace revjudge::learn {

inline constexpr std::size_t kDefaultTopK = 1000;
inline constexpr int kMiBins = 10;

// Values a column is reduced to before computing mutual information. A
// column with at most kMiBins distinct values keeps them; otherwise values
// are cut at quantiles into at most kMiBins bins.
std::vector<int> discretize(const std::vector<double>& column, int max_bins = kMiBins);

// Mutual information in nats between a discrete column and the labels.
double mutual_information(const std::vector<int>& codes, const std::vector<Label>& labels);

struct Selection {
  std::vector<std::uint32_t> columns;  // ascending
  std::vector<std::uint32_t> ranked;   // by MI descending, ties to lower column
  std::vector<double> scores;          // MI of `ranked`, same order
};

// Top-k columns by mutual information with the label. top_k above the width
// is clamped with a warning.
Selection select_features(const SparseMatrix& x, const std::vector<Label>& labels,
                          std::size_t top_k = kDefaultTopK);

}  // namespace revjudge::learn

#endif  // REVJUDGE_LEARN_SELECTION_H_
