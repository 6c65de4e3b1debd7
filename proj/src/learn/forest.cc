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

#include "revjudge/learn/forest.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "revjudge/common/error.h"
#include "revjudge/common/random.h"
#include "revjudge/common/util.h"

namespace revjudge::learn {
namespace {

constexpr std::string_view kForestMagic = "revjudge-forest";
constexpr int kForestFormat = 1;

// Candidate thresholds and per-row bin codes for every feature. A row with
// code b satisfies x <= cuts[b] and x > cuts[b - 1].
struct Binned {
  std::size_t n = 0;
  std::vector<std::vector<double>> cuts;
  std::vector<std::uint8_t> codes;  // feature-major: codes[j * n + i]
};

double midpoint(double a, double b) { return a + (b - a) / 2.0; }

Binned bin_features(const Matrix& x, int max_bins) {
  Binned out;
  out.n = x.rows;
  out.cuts.resize(x.cols);
  out.codes.resize(x.cols * x.rows);
  std::vector<double> sorted(x.rows);
  for (std::size_t j = 0; j < x.cols; ++j) {
    for (std::size_t i = 0; i < x.rows; ++i) sorted[i] = x.at(i, j);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct = sorted;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    auto& cuts = out.cuts[j];
    if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
      for (std::size_t d = 0; d + 1 < distinct.size(); ++d)
        cuts.push_back(midpoint(distinct[d], distinct[d + 1]));
    } else {
      for (int b = 1; b < max_bins; ++b) {
        const double v = sorted[b * sorted.size() / max_bins];
        auto next = std::upper_bound(distinct.begin(), distinct.end(), v);
        if (next == distinct.end()) continue;
        const double cut = midpoint(v, *next);
        if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
      }
    }
    for (std::size_t i = 0; i < x.rows; ++i)
      out.codes[j * x.rows + i] = static_cast<std::uint8_t>(
          std::lower_bound(cuts.begin(), cuts.end(), x.at(i, j)) - cuts.begin());
  }
  return out;
}

struct TreeResult {
  Tree tree;
  std::vector<double> importance;
};

class TreeBuilder {
 public:
  TreeBuilder(const Binned& binned, const std::vector<std::uint8_t>& is_better,
              const ForestParams& params, std::size_t mtry)
      : binned_(binned), y_(is_better), params_(params), mtry_(mtry) {}

  TreeResult build(Rng& rng) {
    const std::size_t n = binned_.n;
    const std::size_t p = binned_.cuts.size();
    weight_.assign(n, 0.0);
    if (params_.bootstrap) {
      for (std::size_t d = 0; d < n; ++d) weight_[rng.uniform_index(n)] += 1.0;
    } else {
      std::fill(weight_.begin(), weight_.end(), 1.0);
    }
    samples_.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (weight_[i] > 0.0) samples_.push_back(static_cast<std::uint32_t>(i));
    features_.resize(p);
    std::iota(features_.begin(), features_.end(), 0u);

    TreeResult result;
    result.importance.assign(p, 0.0);
    struct Pending {
      std::uint32_t node;
      std::size_t begin, end;
      int depth;
    };
    std::vector<Pending> stack;
    result.tree.nodes.emplace_back();
    stack.push_back({0, 0, samples_.size(), 0});
    while (!stack.empty()) {
      const Pending job = stack.back();
      stack.pop_back();
      Split split = find_split(job.begin, job.end, job.depth, rng);
      TreeNode& node = result.tree.nodes[job.node];
      node.p_better = split.total > 0.0 ? split.better / split.total : 0.0;
      if (split.feature < 0) continue;

      const auto* codes = &binned_.codes[static_cast<std::size_t>(split.feature) * n];
      auto mid = std::stable_partition(samples_.begin() + job.begin, samples_.begin() + job.end,
                                       [&](std::uint32_t i) { return codes[i] <= split.bin; });
      const std::size_t mid_index = mid - samples_.begin();
      const auto left = static_cast<std::uint32_t>(result.tree.nodes.size());
      node.feature = split.feature;
      node.threshold = binned_.cuts[split.feature][split.bin];
      node.left = left;
      node.right = left + 1;
      result.importance[split.feature] += std::max(0.0, split.decrease);
      result.tree.nodes.emplace_back();
      result.tree.nodes.emplace_back();
      // Right pushed first so the left subtree is expanded first.
      stack.push_back({left + 1, mid_index, job.end, job.depth + 1});
      stack.push_back({left, job.begin, mid_index, job.depth + 1});
    }
    return result;
  }

 private:
  struct Split {
    int feature = -1;
    std::uint8_t bin = 0;
    double decrease = 0.0;
    double better = 0.0;
    double total = 0.0;
  };

  static double gini_weight(double b, double t) {
    // t * (1 - sum p^2)
    const double nb = t - b;
    return t - (b * b + nb * nb) / t;
  }

  Split find_split(std::size_t begin, std::size_t end, int depth, Rng& rng) {
    Split best;
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint32_t i = samples_[s];
      best.total += weight_[i];
      if (y_[i]) best.better += weight_[i];
    }
    const double total = best.total;
    const double min_leaf = static_cast<double>(params_.min_samples_leaf);
    if (best.better == 0.0 || best.better == total) return best;
    if (total < 2.0 * min_leaf) return best;
    if (params_.max_depth > 0 && depth >= params_.max_depth) return best;

    const double parent = gini_weight(best.better, total);
    const std::size_t n = binned_.n;
    const std::size_t p = features_.size();
    double best_score = -1.0;
    std::size_t informative = 0;
    for (std::size_t k = 0; k < p && informative < mtry_; ++k) {
      std::swap(features_[k], features_[k + rng.uniform_index(p - k)]);
      const std::uint32_t f = features_[k];
      const auto& cuts = binned_.cuts[f];
      if (cuts.empty()) continue;
      const std::size_t bins = cuts.size() + 1;
      hist_better_.assign(bins, 0.0);
      hist_total_.assign(bins, 0.0);
      const auto* codes = &binned_.codes[static_cast<std::size_t>(f) * n];
      for (std::size_t s = begin; s < end; ++s) {
        const std::uint32_t i = samples_[s];
        hist_total_[codes[i]] += weight_[i];
        if (y_[i]) hist_better_[codes[i]] += weight_[i];
      }
      std::size_t occupied = 0;
      for (double t : hist_total_) occupied += t > 0.0;
      if (occupied < 2) continue;  // constant in this node
      ++informative;

      double lb = 0.0, lt = 0.0;
      for (std::size_t b = 0; b + 1 < bins; ++b) {
        if (hist_total_[b] == 0.0) continue;
        lb += hist_better_[b];
        lt += hist_total_[b];
        const double rt = total - lt;
        if (rt <= 0.0) break;
        if (lt < min_leaf || rt < min_leaf) continue;
        const double rb = best.better - lb;
        // Maximizing sum of (class weight)^2 / child weight minimizes child Gini.
        const double score = (lb * lb + (lt - lb) * (lt - lb)) / lt +
                             (rb * rb + (rt - rb) * (rt - rb)) / rt;
        if (score > best_score) {
          best_score = score;
          best.feature = static_cast<int>(f);
          best.bin = static_cast<std::uint8_t>(b);
          best.decrease = parent - gini_weight(lb, lt) - gini_weight(rb, rt);
        }
      }
    }
    return best;
  }

  const Binned& binned_;
  const std::vector<std::uint8_t>& y_;
  const ForestParams& params_;
  std::size_t mtry_;
  std::vector<double> weight_;
  std::vector<std::uint32_t> samples_;
  std::vector<std::uint32_t> features_;
  std::vector<double> hist_better_, hist_total_;
};

void validate(const ForestParams& p) {
  if (p.n_trees < 1) throw ArgumentError("n_trees must be at least 1");
  if (p.max_features < 0) throw ArgumentError("max_features must be non-negative");
  if (p.max_depth < 0) throw ArgumentError("max_depth must be non-negative");
  if (p.min_samples_leaf < 1) throw ArgumentError("min_samples_leaf must be at least 1");
  if (p.max_bins < 2 || p.max_bins > 256) throw ArgumentError("max_bins must be in [2, 256]");
}

}  // namespace

double Tree::predict(std::span<const double> x) const {
  std::uint32_t i = 0;
  while (nodes[i].feature >= 0)
    i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
  return nodes[i].p_better;
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> d(nodes.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (nodes[i].feature >= 0) d[nodes[i].left] = d[nodes[i].right] = d[i] + 1;
  }
  return deepest;
}

double ForestModel::probability(std::span<const double> x) const {
  if (x.size() != columns.size())
    throw ArgumentError("input has " + std::to_string(x.size()) + " values, model expects " +
                        std::to_string(columns.size()));
  if (trees.empty()) throw ConfigurationError("forest has no trees");
  double sum = 0.0;
  for (const auto& t : trees) sum += t.predict(x);
  return sum / static_cast<double>(trees.size());
}

Prediction ForestModel::predict(std::span<const double> x) const {
  Prediction p;
  p.probability = probability(x);
  p.label = p.probability >= kDecisionThreshold ? Label::Better : Label::NotBetter;
  return p;
}

Prediction ForestModel::predict(const SparseRow& row, const std::string& row_schema_version) const {
  if (row_schema_version != schema_version)
    throw ConfigurationError("feature vector schema " + row_schema_version +
                             " does not match the model schema " + schema_version);
  const auto x = project_row(row, columns);
  return predict(std::span<const double>(x));
}

ForestModel train_forest(const Matrix& x, const std::vector<Label>& y, const ForestParams& params,
                         std::uint64_t seed, std::uint64_t stream) {
  validate(params);
  if (x.rows != y.size()) throw ArgumentError("rows and labels differ in length");
  if (x.rows == 0 || x.cols == 0) throw ArgumentError("cannot train on an empty matrix");
  std::vector<std::uint8_t> is_better(y.size());
  std::size_t better = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    is_better[i] = y[i] == Label::Better;
    better += is_better[i];
  }
  if (better == 0 || better == y.size())
    throw DegenerateTrainingError("training labels contain a single class");

  const Binned binned = bin_features(x, params.max_bins);
  const std::size_t mtry =
      params.max_features > 0
          ? std::min<std::size_t>(params.max_features, x.cols)
          : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(x.cols))));

  ForestModel model;
  model.params = params;
  model.params.threads = 0;
  model.seed = seed;
  model.stream = stream;
  model.trees.resize(params.n_trees);
  std::vector<std::vector<double>> tree_importance(params.n_trees);

  std::atomic<int> next{0};
  auto worker = [&]() {
    TreeBuilder builder(binned, is_better, params, mtry);
    for (int t = next++; t < params.n_trees; t = next++) {
      Rng rng(mix_seed(seed, stream, static_cast<std::uint64_t>(t)));
      TreeResult r = builder.build(rng);
      model.trees[t] = std::move(r.tree);
      tree_importance[t] = std::move(r.importance);
    }
  };
  unsigned threads = params.threads > 0 ? params.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, params.n_trees));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Per-tree normalization, then the mean over trees, then renormalize.
  model.importance.assign(x.cols, 0.0);
  for (const auto& imp : tree_importance) {
    const double s = std::accumulate(imp.begin(), imp.end(), 0.0);
    if (s <= 0.0) continue;
    for (std::size_t j = 0; j < imp.size(); ++j) model.importance[j] += imp[j] / s;
  }
  const double total = std::accumulate(model.importance.begin(), model.importance.end(), 0.0);
  if (total > 0.0)
    for (double& v : model.importance) v /= total;
  model.columns.resize(x.cols);
  std::iota(model.columns.begin(), model.columns.end(), 0u);
  return model;
}

void ForestModel::save(std::ostream& out) const {
  out << kForestMagic << ' ' << kForestFormat << '\n'
      << "schema_version " << schema_version << '\n'
      << "seed " << seed << '\n'
      << "stream " << stream << '\n'
      << "params " << params.n_trees << ' ' << params.max_features << ' ' << params.max_depth
      << ' ' << params.min_samples_leaf << ' ' << (params.bootstrap ? 1 : 0) << ' '
      << params.max_bins << '\n'
      << "columns " << columns.size();
  for (auto c : columns) out << ' ' << c;
  out << "\nimportance " << importance.size();
  for (double v : importance) out << ' ' << format_exact(v);
  out << "\ntrees " << trees.size() << '\n';
  for (const auto& t : trees) {
    out << "tree " << t.nodes.size() << '\n';
    for (const auto& n : t.nodes)
      out << n.feature << ' ' << format_exact(n.threshold) << ' ' << n.left << ' ' << n.right
          << ' ' << format_exact(n.p_better) << '\n';
  }
}

ForestModel ForestModel::load(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  auto next = [&](std::string_view key) -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError("truncated forest model", line_no + 1);
    ++line_no;
    std::istringstream s(line);
    std::string word;
    s >> word;
    if (word != key)
      throw SchemaError("expected '" + std::string(key) + "' in forest model", line_no);
    return s;
  };
  auto check = [&](std::istream& s) {
    if (s.fail()) throw SchemaError("malformed forest model line", line_no);
  };
  auto read_double = [&](std::istream& s) {
    std::string tok;
    s >> tok;
    check(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw SchemaError("bad number '" + tok + "'", line_no);
    }
    if (used != tok.size()) throw SchemaError("bad number '" + tok + "'", line_no);
    return v;
  };

  ForestModel m;
  {
    auto s = next(kForestMagic);
    int format = 0;
    s >> format;
    if (format != kForestFormat) throw SchemaError("unsupported forest format", line_no);
  }
  {
    auto s = next("schema_version");
    s >> m.schema_version;
  }
  {
    auto s = next("seed");
    s >> m.seed;
    check(s);
  }
  {
    auto s = next("stream");
    s >> m.stream;
    check(s);
  }
  {
    auto s = next("params");
    int bootstrap = 0;
    s >> m.params.n_trees >> m.params.max_features >> m.params.max_depth >>
        m.params.min_samples_leaf >> bootstrap >> m.params.max_bins;
    check(s);
    m.params.bootstrap = bootstrap != 0;
  }
  {
    auto s = next("columns");
    std::size_t n = 0;
    s >> n;
    m.columns.resize(n);
    for (auto& c : m.columns) s >> c;
    check(s);
  }
  {
    auto s = next("importance");
    std::size_t n = 0;
    s >> n;
    check(s);
    for (std::size_t j = 0; j < n; ++j) m.importance.push_back(read_double(s));
  }
  std::size_t n_trees = 0;
  {
    auto s = next("trees");
    s >> n_trees;
    check(s);
  }
  for (std::size_t t = 0; t < n_trees; ++t) {
    auto s = next("tree");
    std::size_t n_nodes = 0;
    s >> n_nodes;
    check(s);
    Tree tree;
    for (std::size_t k = 0; k < n_nodes; ++k) {
      if (!std::getline(in, line)) throw ParseError("truncated tree", line_no + 1);
      ++line_no;
      std::istringstream ns(line);
      TreeNode node;
      ns >> node.feature;
      check(ns);
      node.threshold = read_double(ns);
      ns >> node.left >> node.right;
      check(ns);
      node.p_better = read_double(ns);
      if (node.feature >= 0 && (static_cast<std::size_t>(node.feature) >= m.columns.size() ||
                                node.left >= n_nodes || node.right >= n_nodes || node.left <= k ||
                                node.right <= k))
        throw SchemaError("tree node references outside the model", line_no);
      tree.nodes.push_back(node);
    }
    if (tree.nodes.empty()) throw SchemaError("empty tree", line_no);
    m.trees.push_back(std::move(tree));
  }
  if (m.importance.size() != m.columns.size())
    throw SchemaError("importance and column counts differ", line_no);
  return m;
}

std::string ForestModel::fingerprint() const {
  std::ostringstream buf;
  save(buf);
  return to_hex(fnv1a64(buf.str()));
}

}  // namespace revjudge::learn
