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

#ifndef REVJUDGE_LEARN_FOREST_H_
#define REVJUDGE_LEARN_FOREST_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "revjudge/corpus/types.h"
#include "revjudge/learn/matrix.h"

namespace revjudge::learn {

struct ForestParams {
  int n_trees = 500;
  int max_features = 0;  // per split; 0 means floor(sqrt(width))
  int max_depth = 0;     // 0 means unlimited
  int min_samples_leaf = 1;
  bool bootstrap = true;
  int max_bins = 255;    // candidate thresholds per feature at most max_bins - 1
  int threads = 0;       // 0 means hardware concurrency; not part of the model

  bool operator==(const ForestParams&) const = default;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // go left when x <= threshold
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double p_better = 0.0;      // leaf value

  bool operator==(const TreeNode&) const = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  double predict(std::span<const double> x) const;
  std::size_t depth() const;
  bool operator==(const Tree&) const = default;
};

struct Prediction {
  Label label = Label::Better;
  double probability = 0.0;  // of Better
};

inline constexpr double kDecisionThreshold = 0.5;

class ForestModel {
 public:
  // Identifies the feature space the model was trained on.
  std::string schema_version;
  // Model input j is schema column columns[j].
  std::vector<std::uint32_t> columns;
  ForestParams params;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<Tree> trees;
  // Normalized mean impurity decrease, one entry per model input.
  std::vector<double> importance;

  std::size_t width() const { return columns.size(); }

  double probability(std::span<const double> x) const;
  Prediction predict(std::span<const double> x) const;
  // Checks schema_version, then projects the sparse row onto `columns`.
  Prediction predict(const SparseRow& row, const std::string& row_schema_version) const;

  // Stable content hash of the serialized model.
  std::string fingerprint() const;

  void save(std::ostream& out) const;
  static ForestModel load(std::istream& in);
  bool operator==(const ForestModel&) const = default;
};

// Bagged CART trees with Gini splits over histogram thresholds. Tree t draws
// from Rng(mix_seed(seed, stream, t)) so results do not depend on threading.
ForestModel train_forest(const Matrix& x, const std::vector<Label>& y, const ForestParams& params,
                         std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace revjudge::learn

#endif  // REVJUDGE_LEARN_FOREST_H_
