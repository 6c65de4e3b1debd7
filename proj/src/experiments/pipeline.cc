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

#include "revjudge/experiments/pipeline.h"

#include <algorithm>
#include <fstream>
#include <string_view>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/learn/matrix.h"
#include "revjudge/learn/selection.h"
#include "revjudge/learn/smote.h"

namespace revjudge::experiments {

namespace {

constexpr std::string_view kBundleMagic = "revjudge-model 1";
constexpr std::uint64_t kSmoteStream = 0x5307eULL;

learn::SparseRow to_sparse(const features::FeatureVector& v) {
  return learn::SparseRow(v.values.begin(), v.values.end());
}

}  // namespace

ModelBundle ModelBundle::make(features::FeatureSchema schema, learn::ForestModel forest) {
  if (forest.schema_version != schema.fingerprint())
    throw ConfigurationError("forest was trained on schema " + forest.schema_version +
                             ", not " + schema.fingerprint());
  for (auto c : forest.columns)
    if (c >= schema.width()) throw ConfigurationError("forest input outside the schema");
  ModelBundle bundle;
  bundle.schema = std::move(schema);
  bundle.forest = std::move(forest);
  bundle.model_id_ = bundle.forest.fingerprint();
  return bundle;
}

void ModelBundle::save(std::ostream& out) const {
  out << kBundleMagic << '\n';
  schema.save(out);
  forest.save(out);
}

void ModelBundle::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write model '" + path + "'");
  save(out);
  if (!out) throw ConfigurationError("failed writing model '" + path + "'");
}

ModelBundle ModelBundle::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBundleMagic)
    throw SchemaError("not a revjudge model file (or unsupported format version)", 1);
  auto schema = features::FeatureSchema::load(in);
  auto forest = learn::ForestModel::load(in);
  return make(std::move(schema), std::move(forest));
}

ModelBundle ModelBundle::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open model '" + path + "'");
  return load(in);
}

ModelBundle train_bundle(const std::vector<const features::PairAnalysis*>& training,
                         const std::vector<Label>& labels, const TrainingConfig& config,
                         std::uint64_t seed, std::uint64_t stream, TrainingTrace* trace) {
  if (training.size() != labels.size())
    throw ArgumentError("training pairs and labels differ in length");
  if (training.empty()) throw ArgumentError("no training material");

  auto schema = features::build_schema(training, config.min_df);
  learn::SparseMatrix sparse;
  sparse.width = schema.width();
  sparse.rows.reserve(training.size());
  for (const auto* a : training) sparse.rows.push_back(to_sparse(features::extract(*a, schema)));

  auto selection = learn::select_features(sparse, labels, config.top_k);
  learn::Matrix x = sparse.project(selection.columns);
  std::vector<Label> y = labels;

  std::size_t n_better = std::count(y.begin(), y.end(), Label::Better);
  std::size_t n_not = y.size() - n_better;
  if (n_better == 0 || n_not == 0)
    throw DegenerateTrainingError("training material holds a single class");
  const double majority_share = double(std::max(n_better, n_not)) / double(y.size());
  const Label minority = n_better < n_not ? Label::Better : Label::NotBetter;
  bool fired = false;
  std::size_t synthetic = 0;
  if (majority_share > config.smote_tolerance) {
    learn::Matrix minority_rows(0, x.cols);
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] == minority) minority_rows.append_row(x.row(i));
    const std::size_t target = std::max(n_better, n_not) - minority_rows.rows;
    auto result = learn::smote(minority_rows, target, config.smote_k,
                               mix_seed(seed, stream, kSmoteStream));
    for (std::size_t i = 0; i < result.synthetic.rows; ++i) {
      x.append_row(result.synthetic.row(i));
      y.push_back(minority);
    }
    fired = true;
    synthetic = result.synthetic.rows;
  }

  auto forest = learn::train_forest(x, y, config.forest, seed, stream);
  forest.columns = selection.columns;
  forest.schema_version = schema.fingerprint();

  if (trace) {
    trace->training_pairs = training.size();
    trace->schema_width = schema.width();
    trace->selected = selection.columns.size();
    trace->majority_share = majority_share;
    trace->smote_fired = fired;
    trace->minority = minority;
    trace->synthetic = synthetic;
    trace->schema_fingerprint = schema.fingerprint();
    trace->training_digest = schema.training_digest();
  }
  auto bundle = ModelBundle::make(std::move(schema), std::move(forest));
  if (trace) trace->model_id = bundle.model_id();
  return bundle;
}

Explanation predict_with_explanation(const ModelBundle& bundle,
                                     const features::PairAnalysis& analysis,
                                     std::size_t max_contributions) {
  auto vec = features::extract(analysis, bundle.schema);
  Explanation out;
  out.prediction = bundle.forest.predict(to_sparse(vec), vec.schema_version);

  const auto& f = bundle.forest;
  for (std::size_t j = 0; j < f.columns.size(); ++j) {
    const double value = vec.get(f.columns[j]);
    if (value == 0.0) continue;
    out.top.push_back({bundle.schema.column_name(f.columns[j]), value, f.importance[j]});
  }
  std::sort(out.top.begin(), out.top.end(), [](const Contribution& a, const Contribution& b) {
    if (a.importance != b.importance) return a.importance > b.importance;
    return a.feature < b.feature;
  });
  if (out.top.size() > max_contributions) out.top.resize(max_contributions);
  return out;
}

}  // namespace revjudge::experiments
