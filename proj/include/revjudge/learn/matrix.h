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

#ifndef REVJUDGE_LEARN_MATRIX_H_
#define REVJUDGE_LEARN_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace revjudge::learn {

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  void append_row(std::span<const double> values);
  bool operator==(const Matrix&) const = default;
};

using SparseRow = std::vector<std::pair<std::uint32_t, double>>;  // sorted by column

// Sparse rows over a fixed column space.
struct SparseMatrix {
  std::size_t width = 0;
  std::vector<SparseRow> rows;

  std::size_t size() const { return rows.size(); }
  // Dense projection onto `columns`, in that order.
  Matrix project(const std::vector<std::uint32_t>& columns) const;
};

std::vector<double> project_row(const SparseRow& row, const std::vector<std::uint32_t>& columns);

}  // namespace revjudge::learn

#endif  // REVJUDGE_LEARN_MATRIX_H_
