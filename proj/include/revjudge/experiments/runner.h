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

#ifndef REVJUDGE_EXPERIMENTS_RUNNER_H_
#define REVJUDGE_EXPERIMENTS_RUNNER_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revjudge/corpus/types.h"
#include "revjudge/experiments/config.h"
#include "revjudge/experiments/pipeline.h"
#include "revjudge/features/features.h"
#include "revjudge/learn/folds.h"
#include "revjudge/learn/metrics.h"
#include "revjudge/textmetrics/toolkit.h"

namespace revjudge::experiments {

// Loaded, labeled input material for a run.
struct Datasets {
  std::vector<RevisionPair> argrewrite;
  std::vector<RevisionPair> aesw_all;
  std::vector<RevisionPair> aesw_plain;
  std::vector<RevisionPair> aesw_dev;
  // File name -> content hash, and realized counts, for the manifest.
  std::map<std::string, std::string> hashes;
  std::map<std::string, std::size_t> counts;
};

// ArgRewrite labels come from majority vote. AESW samples are read from
// export files or drawn from the SGML: reconstruct, hold out the dev split,
// sample per mode, then flip.
Datasets load_datasets(const ExperimentConfig& config);

// Analyses aligned with labels.
struct LabeledSet {
  std::vector<features::PairAnalysis> analyses;
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  std::vector<std::string> ids() const;
};

// Throws ArgumentError on an unlabeled pair.
LabeledSet analyze_labeled(const std::vector<RevisionPair>& pairs,
                           const text::MetricsToolkit& toolkit);

// Token-length difference S2 - S1.
double length_diff(const features::PairAnalysis& analysis);

struct PredictionRecord {
  std::string id;
  Label gold = Label::Better;
  Label predicted = Label::Better;
  double probability = 0.0;
  double len_diff = 0.0;

  bool operator==(const PredictionRecord&) const = default;
};

struct FoldOutcome {
  int fold = 0;
  std::vector<PredictionRecord> predictions;
  learn::MetricsReport metrics;
  // Feature name -> importance, nonzero only, by importance descending.
  std::vector<std::pair<std::string, double>> importance;
  std::optional<TrainingTrace> trace;  // unset for the baseline
};

// One table row: a condition or the majority baseline.
struct RowResult {
  std::string name;
  std::string fold_digest;
  std::vector<FoldOutcome> folds;
};

// Unweighted per-fold means of every metric; confusion counts are summed.
learn::MetricsReport mean_metrics(const RowResult& row);

// Throws ProtocolError if a test id is in training or the schema's
// vocabulary came from anything other than exactly `train_ids`.
void audit_fold(const std::vector<std::string>& train_ids,
                const std::vector<std::string>& test_ids, const features::FeatureSchema& schema);

// Majority label of each fold's ArgRewrite training part.
RowResult run_baseline(const LabeledSet& argrewrite, const learn::FoldPlan& plan);

// Per fold: train on the ArgRewrite training part (if use_argrewrite) plus
// all of `aesw`, test on the held-out ArgRewrite fold. The fold's model
// draws from (model_seed, fold).
RowResult run_condition(const std::string& name, const LabeledSet& argrewrite,
                        bool use_argrewrite, const LabeledSet* aesw, const learn::FoldPlan& plan,
                        const TrainingConfig& config, std::uint64_t model_seed);

inline constexpr double kSignificanceLevel = 0.05;

struct TableRow {
  std::string name;
  learn::MetricsReport mean;
  // Columns: macro precision, recall, F1.
  std::array<std::optional<learn::SignificanceResult>, 3> significance;
  std::array<bool, 3> star{};
  std::array<bool, 3> bold{};
};

struct ComparisonTable {
  std::vector<TableRow> rows;  // baseline first
  std::string render() const;
};

// Stars a column where the row beats the baseline with p < 0.05 under a
// paired t-test over per-fold values; bolds column maxima at printed precision. Throws
// ProtocolError if any row used a different fold plan.
ComparisonTable compare_conditions(const RowResult& baseline, const std::vector<RowResult>& rows);

struct RankedFeature {
  std::string name;
  double mean_importance = 0.0;
};

// Mean importance per feature name over folds (0 where a fold did not use
// it), descending, ties by name.
std::vector<RankedFeature> feature_importance_report(const RowResult& row);

struct LengthDiagnostic {
  std::optional<double> better;      // unset when nothing was predicted Better
  std::optional<double> not_better;  // unset when nothing was predicted NotBetter
  std::size_t n_better = 0;
  std::size_t n_not_better = 0;
};

LengthDiagnostic length_diff_diagnostic(const std::vector<Label>& predicted,
                                        const std::vector<RevisionPair>& pairs);
LengthDiagnostic length_diff_diagnostic(const RowResult& row);

// Figure-style per-class precision/recall/F1, one line per row and class.
std::string figure1_tsv(const std::vector<RowResult>& rows);

std::string render_report(const RowResult& baseline, const std::vector<RowResult>& rows);

struct TuningOutcome {
  learn::ForestParams chosen;
  std::vector<std::pair<learn::ForestParams, double>> scores;  // macro F1 per grid point
};

// Grid search by cross-validated macro F1 on a labeled dev set; earlier grid
// points win ties. An empty grid axis keeps the base value.
TuningOutcome tune_forest(const LabeledSet& dev, const TrainingConfig& base,
                          const TuningConfig& tuning, std::uint64_t seed);

struct ExperimentResult {
  learn::FoldPlan plan;
  RowResult baseline;
  std::vector<RowResult> conditions;
  std::string manifest;  // JSON
};

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const text::MetricsToolkit& toolkit);

// manifest.json, folds.jsonl, metrics.jsonl, predictions.jsonl,
// importance.jsonl, figure1.tsv, report.txt.
void write_run_dir(const std::string& dir, const ExperimentResult& result);

// Rows rebuilt from metrics.jsonl, predictions.jsonl and importance.jsonl.
// Baseline first.
std::vector<RowResult> read_run_rows(const std::string& dir);

// Report regenerated from the persisted per-fold artifacts.
std::string replay_report(const std::string& dir);

}  // namespace revjudge::experiments

#endif  // REVJUDGE_EXPERIMENTS_RUNNER_H_
