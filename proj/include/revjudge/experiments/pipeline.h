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

#ifndef REVJUDGE_EXPERIMENTS_PIPELINE_H_
#define REVJUDGE_EXPERIMENTS_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "revjudge/corpus/types.h"
#include "revjudge/experiments/config.h"
#include "revjudge/features/features.h"
#include "revjudge/learn/forest.h"

namespace revjudge::experiments {

// What happened while fitting one model.
struct TrainingTrace {
  std::size_t training_pairs = 0;
  std::size_t schema_width = 0;
  std::size_t selected = 0;
  double majority_share = 0.0;
  bool smote_fired = false;
  Label minority = Label::NotBetter;
  std::size_t synthetic = 0;
  std::string schema_fingerprint;
  std::string training_digest;  // ids the vocabulary was built from
  std::string model_id;
};

// A feature schema with the forest trained on it. The forest's inputs are
// schema columns listed in forest.columns.
struct ModelBundle {
  features::FeatureSchema schema;
  learn::ForestModel forest;

  const std::string& model_id() const { return model_id_; }

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  // Throws ConfigurationError if the forest was not trained on the schema.
  static ModelBundle load(std::istream& in);
  static ModelBundle load_file(const std::string& path);

  static ModelBundle make(features::FeatureSchema schema, learn::ForestModel forest);

 private:
  std::string model_id_;
};

// Schema, extraction, feature selection, SMOTE when the majority share
// exceeds the tolerance, then the forest. SMOTE draws from
// mix_seed(seed, stream, ...) and the forest from (seed, stream), so the
// result depends only on the training material and these two numbers.
ModelBundle train_bundle(const std::vector<const features::PairAnalysis*>& training,
                         const std::vector<Label>& labels, const TrainingConfig& config,
                         std::uint64_t seed, std::uint64_t stream = 0,
                         TrainingTrace* trace = nullptr);

struct Contribution {
  std::string feature;
  double value = 0.0;
  double importance = 0.0;

  bool operator==(const Contribution&) const = default;
};

struct Explanation {
  learn::Prediction prediction;
  // The pair's nonzero model inputs, by importance descending (ties by name).
  std::vector<Contribution> top;
};

inline constexpr std::size_t kDefaultContributions = 10;

Explanation predict_with_explanation(const ModelBundle& bundle,
                                     const features::PairAnalysis& analysis,
                                     std::size_t max_contributions = kDefaultContributions);

}  // namespace revjudge::experiments

#endif  // REVJUDGE_EXPERIMENTS_PIPELINE_H_
