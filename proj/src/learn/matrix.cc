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

#include "revjudge/learn/matrix.h"

#include <algorithm>

#include "revjudge/common/error.h"

namespace revjudge::learn {

void Matrix::append_row(std::span<const double> values) {
  if (rows == 0 && cols == 0) cols = values.size();
  if (values.size() != cols) throw ArgumentError("row width differs from matrix width");
  data.insert(data.end(), values.begin(), values.end());
  ++rows;
}

std::vector<double> project_row(const SparseRow& row, const std::vector<std::uint32_t>& columns) {
  std::vector<double> out(columns.size(), 0.0);
  // columns may be unsorted; walk a sorted copy of their positions.
  std::vector<std::size_t> order(columns.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return columns[a] < columns[b]; });
  auto it = row.begin();
  for (std::size_t j : order) {
    while (it != row.end() && it->first < columns[j]) ++it;
    if (it != row.end() && it->first == columns[j]) out[j] = it->second;
  }
  return out;
}

Matrix SparseMatrix::project(const std::vector<std::uint32_t>& columns) const {
  Matrix m(rows.size(), columns.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto values = project_row(rows[i], columns);
    std::copy(values.begin(), values.end(), m.row(i).begin());
  }
  return m;
}

}  // namespace revjudge::learn
