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

#include "revjudge/learn/selection.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

namespace revjudge::learn {
namespace {

// rows of (count with Better, count with NotBetter), in value order.
double mi_from_table(const std::vector<std::pair<double, double>>& table, double n_better,
                     double n_not) {
  const double n = n_better + n_not;
  if (n_better == 0.0 || n_not == 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [b, nb] : table) {
    const double row = b + nb;
    if (b > 0.0) mi += b / n * std::log(b * n / (row * n_better));
    if (nb > 0.0) mi += nb / n * std::log(nb * n / (row * n_not));
  }
  return std::max(0.0, mi);
}

}  // namespace

std::vector<int> discretize(const std::vector<double>& column, int max_bins) {
  if (max_bins < 2) throw ArgumentError("max_bins must be at least 2");
  std::vector<double> sorted = column;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> codes(column.size());
  if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
    for (std::size_t i = 0; i < column.size(); ++i)
      codes[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), column[i]) -
                                  distinct.begin());
    return codes;
  }
  std::vector<double> edges;
  for (int b = 1; b < max_bins; ++b) edges.push_back(sorted[b * sorted.size() / max_bins]);
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (std::size_t i = 0; i < column.size(); ++i)
    codes[i] = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), column[i]) -
                                edges.begin());
  return codes;
}

double mutual_information(const std::vector<int>& codes, const std::vector<Label>& labels) {
  if (codes.size() != labels.size()) throw ArgumentError("codes and labels differ in length");
  std::map<int, std::pair<double, double>> counts;
  double nb = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (labels[i] == Label::Better) {
      counts[codes[i]].first += 1.0;
      nb += 1.0;
    } else {
      counts[codes[i]].second += 1.0;
      nn += 1.0;
    }
  }
  std::vector<std::pair<double, double>> table;
  for (const auto& [_, c] : counts) table.push_back(c);
  return mi_from_table(table, nb, nn);
}

Selection select_features(const SparseMatrix& x, const std::vector<Label>& labels,
                          std::size_t top_k) {
  if (top_k == 0) throw ArgumentError("top_k must be at least 1");
  if (x.size() != labels.size()) throw ArgumentError("rows and labels differ in length");
  if (x.size() == 0) throw ArgumentError("cannot select features from an empty training set");
  if (top_k > x.width) {
    log_warning("top_k " + std::to_string(top_k) + " exceeds the schema width " +
                std::to_string(x.width) + "; keeping all columns");
    top_k = x.width;
  }

  // Transpose the nonzeros.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> by_column(x.width);
  for (std::uint32_t r = 0; r < x.size(); ++r)
    for (const auto& [c, v] : x.rows[r]) {
      if (c >= x.width) throw ArgumentError("sparse column outside the declared width");
      if (v != 0.0) by_column[c].emplace_back(r, v);
    }
  double n_better = 0.0, n_not = 0.0;
  for (Label l : labels) (l == Label::Better ? n_better : n_not) += 1.0;

  std::vector<double> mi(x.width, 0.0);
  std::vector<double> full;
  for (std::uint32_t c = 0; c < x.width; ++c) {
    const auto& nz = by_column[c];
    if (nz.empty()) continue;
    std::map<double, std::pair<double, double>> counts;
    double zb = n_better, zn = n_not;
    bool small = true;
    for (const auto& [r, v] : nz) {
      auto& cell = counts[v];
      if (labels[r] == Label::Better) {
        cell.first += 1.0;
        zb -= 1.0;
      } else {
        cell.second += 1.0;
        zn -= 1.0;
      }
      if (counts.size() + 1 > static_cast<std::size_t>(kMiBins)) {
        small = false;
        break;
      }
    }
    if (small) {
      if (zb + zn > 0.0) counts[0.0] = {zb, zn};
      std::vector<std::pair<double, double>> table;
      for (const auto& [_, cell] : counts) table.push_back(cell);
      mi[c] = mi_from_table(table, n_better, n_not);
    } else {
      full.assign(x.size(), 0.0);
      for (const auto& [r, v] : nz) full[r] = v;
      mi[c] = mutual_information(discretize(full), labels);
    }
  }

  std::vector<std::uint32_t> order(x.width);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return mi[a] > mi[b]; });
  Selection sel;
  sel.ranked.assign(order.begin(), order.begin() + top_k);
  for (std::uint32_t c : sel.ranked) sel.scores.push_back(mi[c]);
  sel.columns = sel.ranked;
  std::sort(sel.columns.begin(), sel.columns.end());
  return sel;
}

}  // namespace revjudge::learn
