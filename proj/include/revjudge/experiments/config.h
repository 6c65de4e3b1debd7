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

#ifndef REVJUDGE_EXPERIMENTS_CONFIG_H_
#define REVJUDGE_EXPERIMENTS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revjudge/aesw/aesw.h"
#include "revjudge/learn/forest.h"
#include "revjudge/learn/selection.h"
#include "revjudge/learn/smote.h"

namespace revjudge::experiments {

enum class Condition {
  ArgRewriteOnly,
  AeswAllOnly,
  AeswPlainOnly,
  ArgRewritePlusAeswAll,
  ArgRewritePlusAeswPlain,
};

// "argrewrite", "aesw-all", "aesw-plain", "argrewrite+aesw-all",
// "argrewrite+aesw-plain".
std::string_view condition_name(Condition condition);
Condition parse_condition(std::string_view name);
const std::vector<Condition>& all_conditions();

bool uses_argrewrite(Condition condition);
// The AESW sample a condition trains on, if any.
std::optional<aesw::SampleMode> aesw_mode(Condition condition);

struct Seeds {
  std::uint64_t folds = 1;
  std::uint64_t sample = 2;
  std::uint64_t flip = 3;
  std::uint64_t model = 4;
  std::uint64_t dev = 5;
};

struct TrainingConfig {
  std::size_t min_df = 2;
  std::size_t top_k = learn::kDefaultTopK;
  int smote_k = learn::kDefaultSmoteNeighbors;
  // SMOTE fires when the majority class exceeds this share of training rows.
  double smote_tolerance = 0.55;
  learn::ForestParams forest;
};

struct TuningGrid {
  std::vector<int> n_trees;
  std::vector<int> max_features;
  std::vector<int> max_depth;
  std::vector<int> min_samples_leaf;
};

struct TuningConfig {
  bool enabled = false;
  int folds = 3;
  TuningGrid grid;
};

struct ExperimentConfig {
  std::vector<Condition> conditions = all_conditions();

  std::string argrewrite;
  std::optional<std::string> aesw_sgml;
  // Pre-drawn samples in export form; override sampling from aesw_sgml.
  std::optional<std::string> aesw_all_sample;
  std::optional<std::string> aesw_plain_sample;
  std::optional<std::string> aesw_dev;
  // Read when the file exists, otherwise generated and written to the run.
  std::optional<std::string> fold_plan;
  std::optional<std::string> resources;

  std::size_t aesw_n = 5000;
  double flip_prob = 0.5;
  double dev_fraction = 0.1;

  int k = 10;
  bool stratified = true;

  Seeds seeds;
  TrainingConfig training;
  TuningConfig tuning;

  // Checks that every condition has the data it needs.
  void validate() const;
};

// JSON config. Relative paths resolve against `base_dir`; unknown keys
// raise ConfigurationError.
ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir);
ExperimentConfig load_config(const std::string& path);

// Canonical JSON rendering with absolute paths, as recorded in manifests.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace revjudge::experiments

#endif  // REVJUDGE_EXPERIMENTS_CONFIG_H_
