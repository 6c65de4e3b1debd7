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

#include "revjudge/experiments/runner.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "revjudge/aesw/aesw.h"
#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/corpus/corpus.h"
#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::experiments {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kBaselineName = "majority-baseline";
constexpr std::uint64_t kDevFlipStream = 0xdef11fULL;
constexpr std::size_t kManifestRanks = 20;
constexpr std::size_t kReportRanks = 10;

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open '" + path + "'");
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return to_hex(fnv1a64(bytes.str()));
}

std::size_t count_flipped(const std::vector<RevisionPair>& pairs) {
  return std::count_if(pairs.begin(), pairs.end(), [](const RevisionPair& p) {
    auto it = p.meta.find("flipped");
    return it != p.meta.end() && it->second == "true";
  });
}

void check_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    std::string_view what) {
  std::unordered_set<std::string> seen(a.begin(), a.end());
  for (const auto& id : b)
    if (seen.count(id))
      throw ProtocolError(std::string(what) + ": id '" + id + "' occurs in both datasets");
}

ordered_json class_json(const learn::ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

learn::ClassMetrics class_from_json(const json& j) {
  return {j.at("precision").get<double>(), j.at("recall").get<double>(), j.at("f1").get<double>()};
}

ordered_json metrics_json(const learn::MetricsReport& m) {
  ordered_json per_class;
  for (const auto& [label, cm] : m.per_class) per_class[std::string(label_name(label))] = class_json(cm);
  return {{"macro", class_json(m.macro)},
          {"per_class", per_class},
          {"confusion", {{m.confusion[0][0], m.confusion[0][1]},
                         {m.confusion[1][0], m.confusion[1][1]}}}};
}

learn::MetricsReport metrics_from_json(const json& j) {
  learn::MetricsReport m;
  m.macro = class_from_json(j.at("macro"));
  for (const auto& [name, cm] : j.at("per_class").items())
    m.per_class[parse_label(name)] = class_from_json(cm);
  const auto& c = j.at("confusion");
  for (int g = 0; g < 2; ++g)
    for (int p = 0; p < 2; ++p) m.confusion[g][p] = c.at(g).at(p).get<std::size_t>();
  return m;
}

ordered_json trace_json(const TrainingTrace& t) {
  return {{"training_pairs", t.training_pairs},
          {"schema_width", t.schema_width},
          {"selected", t.selected},
          {"majority_share", t.majority_share},
          {"smote_fired", t.smote_fired},
          {"minority", std::string(label_name(t.minority))},
          {"synthetic", t.synthetic},
          {"schema_fingerprint", t.schema_fingerprint},
          {"training_digest", t.training_digest},
          {"model_id", t.model_id}};
}

ordered_json params_json(const learn::ForestParams& p) {
  return {{"n_trees", p.n_trees},
          {"max_features", p.max_features},
          {"max_depth", p.max_depth},
          {"min_samples_leaf", p.min_samples_leaf},
          {"bootstrap", p.bootstrap},
          {"max_bins", p.max_bins}};
}

ordered_json diagnostic_json(const LengthDiagnostic& d) {
  return {{"better", d.better ? json(*d.better) : json(nullptr)},
          {"not_better", d.not_better ? json(*d.not_better) : json(nullptr)},
          {"n_better", d.n_better},
          {"n_not_better", d.n_not_better}};
}

std::string fmt3(double v) { return format_fixed(v, 3); }

std::string optional_mean(const std::optional<double>& v) {
  return v ? format_fixed(*v, 2) : "absent";
}

std::vector<std::size_t> plan_to_dataset(const learn::FoldPlan& plan,
                                         const std::vector<std::string>& ids) {
  if (plan.ids.size() != ids.size())
    throw ProtocolError("fold plan covers " + std::to_string(plan.ids.size()) +
                        " ids but the ArgRewrite set has " + std::to_string(ids.size()));
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
  std::vector<std::size_t> out(plan.ids.size());
  for (std::size_t i = 0; i < plan.ids.size(); ++i) {
    auto it = index.find(plan.ids[i]);
    if (it == index.end())
      throw ProtocolError("fold plan id '" + plan.ids[i] + "' is not in the ArgRewrite set");
    out[i] = it->second;
  }
  return out;
}

}  // namespace

std::vector<std::string> LabeledSet::ids() const {
  std::vector<std::string> out;
  out.reserve(analyses.size());
  for (const auto& a : analyses) out.push_back(a.id);
  return out;
}

LabeledSet analyze_labeled(const std::vector<RevisionPair>& pairs,
                           const text::MetricsToolkit& toolkit) {
  LabeledSet set;
  for (const auto& p : pairs) {
    if (!p.label) throw ArgumentError("pair '" + p.id + "' has no label");
    set.labels.push_back(*p.label);
  }
  set.analyses = features::analyze_all(pairs, toolkit);
  return set;
}

double length_diff(const features::PairAnalysis& a) {
  return double(a.s2.tokens.size()) - double(a.s1.tokens.size());
}

Datasets load_datasets(const ExperimentConfig& cfg) {
  cfg.validate();
  Datasets d;
  auto parsed = parse_pairs_file(cfg.argrewrite);
  d.argrewrite = aggregate_labels(parsed.entries);
  for (auto& p : d.argrewrite) {
    if (!p.label) throw ArgumentError("ArgRewrite pair '" + p.id + "' has no label");
    p.source = Source::ArgRewrite;
  }
  auto dist = class_distribution(d.argrewrite);
  d.hashes["argrewrite"] = file_hash(cfg.argrewrite);
  d.counts["argrewrite_pairs"] = d.argrewrite.size();
  d.counts["argrewrite_rejected"] = parsed.rejected.size();
  d.counts["argrewrite_better"] = dist[Label::Better];
  d.counts["argrewrite_not_better"] = dist[Label::NotBetter];

  bool need_all = false, need_plain = false;
  for (Condition c : cfg.conditions) {
    auto mode = aesw_mode(c);
    if (mode == aesw::SampleMode::All) need_all = true;
    if (mode == aesw::SampleMode::Plaintext) need_plain = true;
  }

  aesw::DevSplit split;
  const bool need_sgml = (need_all && !cfg.aesw_all_sample) ||
                         (need_plain && !cfg.aesw_plain_sample) ||
                         (cfg.tuning.enabled && !cfg.aesw_dev);
  if (need_sgml) {
    auto sentences = aesw::parse_aesw_file(*cfg.aesw_sgml);
    std::vector<RevisionPair> pool;
    for (const auto& s : sentences)
      if (auto p = aesw::reconstruct_pair(s)) pool.push_back(std::move(*p));
    d.hashes["aesw_sgml"] = file_hash(*cfg.aesw_sgml);
    d.counts["aesw_sentences"] = sentences.size();
    d.counts["aesw_edited_pairs"] = pool.size();
    if (cfg.dev_fraction > 0.0) {
      split = aesw::split_dev(pool, cfg.dev_fraction, cfg.seeds.dev);
    } else {
      split.rest = std::move(pool);
    }
  }

  auto draw = [&](aesw::SampleMode mode, const std::optional<std::string>& path,
                  std::string_view key) {
    std::vector<RevisionPair> out;
    if (path) {
      out = aesw::read_export_file(*path);
      d.hashes[std::string(key)] = file_hash(*path);
    } else {
      aesw::SampleConfig sc;
      sc.n = cfg.aesw_n;
      sc.mode = mode;
      sc.flip_prob = cfg.flip_prob;
      sc.seed = cfg.seeds.sample;
      d.counts[std::string(key) + "_eligible"] = aesw::eligible_pairs(split.rest, sc).size();
      out = aesw::flip_labels(aesw::sample_pairs(split.rest, sc), cfg.flip_prob, cfg.seeds.flip);
    }
    d.counts[std::string(key) + "_pairs"] = out.size();
    d.counts[std::string(key) + "_flipped"] = count_flipped(out);
    return out;
  };
  if (need_all) d.aesw_all = draw(aesw::SampleMode::All, cfg.aesw_all_sample, "aesw_all");
  if (need_plain)
    d.aesw_plain = draw(aesw::SampleMode::Plaintext, cfg.aesw_plain_sample, "aesw_plain");
  if (cfg.tuning.enabled) {
    if (cfg.aesw_dev) {
      d.aesw_dev = aesw::read_export_file(*cfg.aesw_dev);
      d.hashes["aesw_dev"] = file_hash(*cfg.aesw_dev);
    } else {
      d.aesw_dev = aesw::flip_labels(split.dev, cfg.flip_prob, mix_seed(cfg.seeds.flip, kDevFlipStream));
    }
    d.counts["aesw_dev_pairs"] = d.aesw_dev.size();
  }

  std::vector<std::string> ar_ids;
  for (const auto& p : d.argrewrite) ar_ids.push_back(p.id);
  for (const auto* set : {&d.aesw_all, &d.aesw_plain, &d.aesw_dev}) {
    std::vector<std::string> ids;
    for (const auto& p : *set) ids.push_back(p.id);
    check_disjoint(ar_ids, ids, "ArgRewrite/AESW collision");
  }
  return d;
}

learn::MetricsReport mean_metrics(const RowResult& row) {
  learn::MetricsReport out;
  if (row.folds.empty()) return out;
  const double n = double(row.folds.size());
  for (Label label : {Label::Better, Label::NotBetter}) out.per_class[label] = {};
  for (const auto& f : row.folds) {
    out.macro.precision += f.metrics.macro.precision / n;
    out.macro.recall += f.metrics.macro.recall / n;
    out.macro.f1 += f.metrics.macro.f1 / n;
    for (const auto& [label, cm] : f.metrics.per_class) {
      auto& acc = out.per_class[label];
      acc.precision += cm.precision / n;
      acc.recall += cm.recall / n;
      acc.f1 += cm.f1 / n;
    }
    for (int g = 0; g < 2; ++g)
      for (int p = 0; p < 2; ++p) out.confusion[g][p] += f.metrics.confusion[g][p];
  }
  return out;
}

void audit_fold(const std::vector<std::string>& train_ids, const std::vector<std::string>& test_ids,
                const features::FeatureSchema& schema) {
  check_disjoint(train_ids, test_ids, "train/test leakage");
  if (schema.training_digest() != features::id_digest(train_ids))
    throw ProtocolError("schema vocabulary was not built from exactly the training ids");
  if (schema.training_pairs() != train_ids.size())
    throw ProtocolError("schema training size differs from the training set");
}

RowResult run_baseline(const LabeledSet& argrewrite, const learn::FoldPlan& plan) {
  auto to_data = plan_to_dataset(plan, argrewrite.ids());
  RowResult row;
  row.name = std::string(kBaselineName);
  row.fold_digest = plan.digest();
  for (int f = 0; f < plan.k; ++f) {
    std::vector<Label> train;
    for (auto i : plan.train_indices(f)) train.push_back(argrewrite.labels[to_data[i]]);
    learn::MajorityBaseline baseline(train);
    FoldOutcome out;
    out.fold = f;
    std::vector<Label> gold, pred;
    for (auto i : plan.test_indices(f)) {
      const auto& a = argrewrite.analyses[to_data[i]];
      const Label label = baseline.predict();
      out.predictions.push_back({a.id, argrewrite.labels[to_data[i]], label,
                                 label == Label::Better ? 1.0 : 0.0, length_diff(a)});
      gold.push_back(argrewrite.labels[to_data[i]]);
      pred.push_back(label);
    }
    out.metrics = learn::evaluate(gold, pred);
    row.folds.push_back(std::move(out));
  }
  return row;
}

RowResult run_condition(const std::string& name, const LabeledSet& argrewrite,
                        bool use_argrewrite, const LabeledSet* aesw, const learn::FoldPlan& plan,
                        const TrainingConfig& config, std::uint64_t model_seed) {
  if (!use_argrewrite && (!aesw || aesw->size() == 0))
    throw ArgumentError("condition '" + name + "' has no training material (empty AESW sample)");
  const auto ar_ids = argrewrite.ids();
  auto to_data = plan_to_dataset(plan, ar_ids);
  if (aesw) check_disjoint(ar_ids, aesw->ids(), "ArgRewrite/AESW collision");

  RowResult row;
  row.name = name;
  row.fold_digest = plan.digest();
  for (int f = 0; f < plan.k; ++f) {
    std::vector<const features::PairAnalysis*> train;
    std::vector<Label> labels;
    std::vector<std::string> train_ids, test_ids;
    if (use_argrewrite) {
      for (auto i : plan.train_indices(f)) {
        train.push_back(&argrewrite.analyses[to_data[i]]);
        labels.push_back(argrewrite.labels[to_data[i]]);
        train_ids.push_back(ar_ids[to_data[i]]);
      }
    }
    if (aesw) {
      for (std::size_t i = 0; i < aesw->size(); ++i) {
        train.push_back(&aesw->analyses[i]);
        labels.push_back(aesw->labels[i]);
        train_ids.push_back(aesw->analyses[i].id);
      }
    }
    const auto test = plan.test_indices(f);
    for (auto i : test) test_ids.push_back(ar_ids[to_data[i]]);

    TrainingTrace trace;
    auto bundle = train_bundle(train, labels, config, model_seed, std::uint64_t(f), &trace);
    audit_fold(train_ids, test_ids, bundle.schema);

    FoldOutcome out;
    out.fold = f;
    std::vector<Label> gold, pred;
    for (auto i : test) {
      const auto& a = argrewrite.analyses[to_data[i]];
      auto vec = features::extract(a, bundle.schema);
      auto p = bundle.forest.predict(learn::SparseRow(vec.values.begin(), vec.values.end()),
                                     vec.schema_version);
      out.predictions.push_back({a.id, argrewrite.labels[to_data[i]], p.label, p.probability,
                                 length_diff(a)});
      gold.push_back(argrewrite.labels[to_data[i]]);
      pred.push_back(p.label);
    }
    out.metrics = learn::evaluate(gold, pred);
    const auto& forest = bundle.forest;
    for (std::size_t j = 0; j < forest.columns.size(); ++j)
      if (forest.importance[j] > 0.0)
        out.importance.emplace_back(bundle.schema.column_name(forest.columns[j]),
                                    forest.importance[j]);
    std::sort(out.importance.begin(), out.importance.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    out.trace = trace;
    row.folds.push_back(std::move(out));
  }
  return row;
}

ComparisonTable compare_conditions(const RowResult& baseline, const std::vector<RowResult>& rows) {
  for (const auto& r : rows) {
    if (r.fold_digest != baseline.fold_digest || r.folds.size() != baseline.folds.size())
      throw ProtocolError("row '" + r.name + "' was evaluated on a different fold plan");
    for (std::size_t f = 0; f < r.folds.size(); ++f) {
      const auto& a = r.folds[f].predictions;
      const auto& b = baseline.folds[f].predictions;
      bool same = a.size() == b.size();
      for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].id == b[i].id;
      if (!same)
        throw ProtocolError("row '" + r.name + "' fold " + std::to_string(f) +
                            " has a different test set");
    }
  }
  auto series = [](const RowResult& r, int column) {
    std::vector<double> out;
    for (const auto& f : r.folds) {
      const auto& m = f.metrics.macro;
      out.push_back(column == 0 ? m.precision : column == 1 ? m.recall : m.f1);
    }
    return out;
  };

  ComparisonTable table;
  table.rows.push_back({baseline.name, mean_metrics(baseline), {}, {}, {}});
  for (const auto& r : rows) {
    TableRow row{r.name, mean_metrics(r), {}, {}, {}};
    for (int c = 0; c < 3; ++c) {
      auto sig = learn::significance_vs_baseline(series(r, c), series(baseline, c));
      double mean_delta = 0.0;
      for (double d : sig.deltas) mean_delta += d;
      row.star[c] = sig.p_value < kSignificanceLevel && mean_delta > 0.0;
      row.significance[c] = std::move(sig);
    }
    table.rows.push_back(std::move(row));
  }
  for (int c = 0; c < 3; ++c) {
    auto printed = [c](const TableRow& r) {
      const auto& m = r.mean.macro;
      return std::llround((c == 0 ? m.precision : c == 1 ? m.recall : m.f1) * 1000.0);
    };
    long long best = -1;
    for (const auto& r : table.rows) best = std::max(best, printed(r));
    for (auto& r : table.rows) r.bold[c] = printed(r) == best;
  }
  return table;
}

std::string ComparisonTable::render() const {
  std::ostringstream out;
  out << "| condition | precision | recall | f1 |\n|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << r.name;
    const auto& m = r.mean.macro;
    const double values[3] = {m.precision, m.recall, m.f1};
    for (int c = 0; c < 3; ++c) {
      std::string cell = fmt3(values[c]);
      if (r.bold[c]) cell = "**" + cell + "**";
      if (r.star[c]) cell += "*";
      out << " | " << cell;
    }
    out << " |\n";
  }
  return out.str();
}

std::vector<RankedFeature> feature_importance_report(const RowResult& row) {
  std::map<std::string, double> sums;
  for (const auto& f : row.folds)
    for (const auto& [name, value] : f.importance) sums[name] += value;
  std::vector<RankedFeature> out;
  const double n = row.folds.empty() ? 1.0 : double(row.folds.size());
  for (const auto& [name, total] : sums) out.push_back({name, total / n});
  std::stable_sort(out.begin(), out.end(), [](const RankedFeature& a, const RankedFeature& b) {
    return a.mean_importance > b.mean_importance;
  });
  return out;
}

namespace {

LengthDiagnostic diagnose(const std::vector<Label>& predicted, const std::vector<double>& diffs) {
  LengthDiagnostic d;
  double sum_b = 0.0, sum_n = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == Label::Better) {
      sum_b += diffs[i];
      ++d.n_better;
    } else {
      sum_n += diffs[i];
      ++d.n_not_better;
    }
  }
  if (d.n_better) d.better = sum_b / double(d.n_better);
  if (d.n_not_better) d.not_better = sum_n / double(d.n_not_better);
  return d;
}

}  // namespace

LengthDiagnostic length_diff_diagnostic(const std::vector<Label>& predicted,
                                        const std::vector<RevisionPair>& pairs) {
  if (predicted.size() != pairs.size())
    throw ArgumentError("predictions and pairs differ in length");
  std::vector<double> diffs;
  for (const auto& p : pairs)
    diffs.push_back(double(text::tokenize(p.s2).size()) - double(text::tokenize(p.s1).size()));
  return diagnose(predicted, diffs);
}

LengthDiagnostic length_diff_diagnostic(const RowResult& row) {
  std::vector<Label> predicted;
  std::vector<double> diffs;
  for (const auto& f : row.folds)
    for (const auto& p : f.predictions) {
      predicted.push_back(p.predicted);
      diffs.push_back(p.len_diff);
    }
  return diagnose(predicted, diffs);
}

std::string figure1_tsv(const std::vector<RowResult>& rows) {
  std::ostringstream out;
  out << "condition\tclass\tprecision\trecall\tf1\n";
  for (const auto& r : rows) {
    auto m = mean_metrics(r);
    for (const auto& [label, cm] : m.per_class)
      out << r.name << '\t' << label_name(label) << '\t' << format_fixed(cm.precision, 6) << '\t'
          << format_fixed(cm.recall, 6) << '\t' << format_fixed(cm.f1, 6) << '\n';
  }
  return out.str();
}

std::string render_report(const RowResult& baseline, const std::vector<RowResult>& rows) {
  auto table = compare_conditions(baseline, rows);
  std::ostringstream out;
  out << "# revjudge experiment report\n\n"
      << "Fold plan " << baseline.fold_digest << ", " << baseline.folds.size()
      << " folds; test sets identical across rows.\n\n"
      << "## Cross-validated macro averages\n\n"
      << "Unweighted means over folds. * marks a significant improvement over the majority "
         "baseline (paired t-test over folds, p < 0.05); bold marks the column maximum.\n\n"
      << table.render() << "\n## p-values against the baseline\n\n"
      << "| condition | precision | recall | f1 |\n|---|---|---|---|\n";
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    out << "| " << table.rows[i].name;
    for (const auto& sig : table.rows[i].significance)
      out << " | " << (sig ? format_fixed(sig->p_value, 4) : "-");
    out << " |\n";
  }

  std::vector<RowResult> all{baseline};
  all.insert(all.end(), rows.begin(), rows.end());
  out << "\n## Per-class scores\n\n"
      << "| condition | class | precision | recall | f1 |\n|---|---|---|---|---|\n";
  for (const auto& r : all) {
    auto m = mean_metrics(r);
    for (const auto& [label, cm] : m.per_class)
      out << "| " << r.name << " | " << label_name(label) << " | " << fmt3(cm.precision) << " | "
          << fmt3(cm.recall) << " | " << fmt3(cm.f1) << " |\n";
  }

  out << "\n## Top features by mean importance over folds\n";
  for (const auto& r : rows) {
    out << "\n" << r.name << "\n";
    auto ranked = feature_importance_report(r);
    for (std::size_t i = 0; i < ranked.size() && i < kReportRanks; ++i)
      out << "  " << (i + 1) << ". " << ranked[i].name << "  "
          << format_fixed(ranked[i].mean_importance, 4) << "\n";
  }

  out << "\n## Token length difference (S2 - S1) by predicted class\n\n"
      << "| condition | predicted Better | n | predicted NotBetter | n |\n|---|---|---|---|---|\n";
  for (const auto& r : all) {
    auto d = length_diff_diagnostic(r);
    out << "| " << r.name << " | " << optional_mean(d.better) << " | " << d.n_better << " | "
        << optional_mean(d.not_better) << " | " << d.n_not_better << " |\n";
  }
  return out.str();
}

TuningOutcome tune_forest(const LabeledSet& dev, const TrainingConfig& base,
                          const TuningConfig& tuning, std::uint64_t seed) {
  auto axis = [](const std::vector<int>& values, int fallback) {
    return values.empty() ? std::vector<int>{fallback} : values;
  };
  const auto trees = axis(tuning.grid.n_trees, base.forest.n_trees);
  const auto features = axis(tuning.grid.max_features, base.forest.max_features);
  const auto depths = axis(tuning.grid.max_depth, base.forest.max_depth);
  const auto leaves = axis(tuning.grid.min_samples_leaf, base.forest.min_samples_leaf);

  auto ids = dev.ids();
  auto plan = learn::make_folds(ids, dev.labels, tuning.folds, seed, true);
  TuningOutcome outcome;
  double best = -1.0;
  for (int t : trees)
    for (int mf : features)
      for (int md : depths)
        for (int ml : leaves) {
          TrainingConfig cfg = base;
          cfg.forest.n_trees = t;
          cfg.forest.max_features = mf;
          cfg.forest.max_depth = md;
          cfg.forest.min_samples_leaf = ml;
          double f1 = 0.0;
          for (int f = 0; f < plan.k; ++f) {
            std::vector<const features::PairAnalysis*> train;
            std::vector<Label> labels, gold, pred;
            for (auto i : plan.train_indices(f)) {
              train.push_back(&dev.analyses[i]);
              labels.push_back(dev.labels[i]);
            }
            auto bundle = train_bundle(train, labels, cfg, seed, std::uint64_t(f));
            for (auto i : plan.test_indices(f)) {
              auto vec = features::extract(dev.analyses[i], bundle.schema);
              pred.push_back(bundle.forest
                                 .predict(learn::SparseRow(vec.values.begin(), vec.values.end()),
                                          vec.schema_version)
                                 .label);
              gold.push_back(dev.labels[i]);
            }
            f1 += learn::evaluate(gold, pred).macro.f1 / double(plan.k);
          }
          outcome.scores.emplace_back(cfg.forest, f1);
          if (f1 > best) {
            best = f1;
            outcome.chosen = cfg.forest;
          }
        }
  return outcome;
}

ExperimentResult run_experiment(const ExperimentConfig& input, const text::MetricsToolkit& toolkit) {
  ExperimentConfig cfg = input;
  auto data = load_datasets(cfg);
  auto argrewrite = analyze_labeled(data.argrewrite, toolkit);
  const auto ar_ids = argrewrite.ids();

  ExperimentResult result;
  if (cfg.fold_plan && fs::exists(*cfg.fold_plan)) {
    std::ifstream in(*cfg.fold_plan);
    result.plan = learn::read_fold_plan(in);
    plan_to_dataset(result.plan, ar_ids);
    data.hashes["fold_plan"] = file_hash(*cfg.fold_plan);
  } else {
    result.plan = learn::make_folds(ar_ids, argrewrite.labels, cfg.k, cfg.seeds.folds,
                                    cfg.stratified);
    if (cfg.fold_plan) {
      std::ofstream out(*cfg.fold_plan);
      learn::write_fold_plan(out, result.plan);
      if (!out) throw ConfigurationError("cannot write fold plan '" + *cfg.fold_plan + "'");
    }
  }
  const auto& plan = result.plan;

  ordered_json tuning_json = nullptr;
  if (cfg.tuning.enabled) {
    auto dev = analyze_labeled(data.aesw_dev, toolkit);
    auto tuned = tune_forest(dev, cfg.training, cfg.tuning, mix_seed(cfg.seeds.model, kDevFlipStream));
    const int threads = cfg.training.forest.threads;
    cfg.training.forest = tuned.chosen;
    cfg.training.forest.threads = threads;
    ordered_json grid = ordered_json::array();
    for (const auto& [params, f1] : tuned.scores)
      grid.push_back({{"params", params_json(params)}, {"macro_f1", f1}});
    tuning_json = {{"dev_pairs", dev.size()}, {"grid", grid}, {"chosen", params_json(tuned.chosen)}};
  }

  std::optional<LabeledSet> aesw_all, aesw_plain;
  for (Condition c : cfg.conditions) {
    auto mode = aesw_mode(c);
    if (mode == aesw::SampleMode::All && !aesw_all)
      aesw_all = analyze_labeled(data.aesw_all, toolkit);
    if (mode == aesw::SampleMode::Plaintext && !aesw_plain)
      aesw_plain = analyze_labeled(data.aesw_plain, toolkit);
  }

  result.baseline = run_baseline(argrewrite, plan);
  for (Condition c : cfg.conditions) {
    auto mode = aesw_mode(c);
    const LabeledSet* aesw = !mode ? nullptr
                             : *mode == aesw::SampleMode::All ? &*aesw_all
                                                              : &*aesw_plain;
    log_info("running condition " + std::string(condition_name(c)));
    result.conditions.push_back(run_condition(std::string(condition_name(c)), argrewrite,
                                              uses_argrewrite(c), aesw, plan, cfg.training,
                                              cfg.seeds.model));
  }

  ordered_json manifest;
  manifest["tool"] = "revjudge";
  manifest["format"] = 1;
  manifest["config"] = ordered_json::parse(config_to_json(input));
  manifest["datasets"] = {{"hashes", data.hashes}, {"counts", data.counts}};
  auto sizes = plan.fold_sizes();
  manifest["fold_plan"] = {{"k", plan.k},
                           {"seed", plan.seed},
                           {"stratified", plan.stratified},
                           {"digest", plan.digest()},
                           {"sizes", sizes}};
  manifest["tuning"] = tuning_json;
  manifest["forest_params"] = params_json(cfg.training.forest);
  manifest["protocol"] = {{"significance", learn::SignificanceResult{}.test},
                          {"alpha", kSignificanceLevel},
                          {"feature_selection", "mutual information, top_k"},
                          {"decision_threshold", learn::kDecisionThreshold}};
  ordered_json rows = ordered_json::array();
  {
    auto d = length_diff_diagnostic(result.baseline);
    rows.push_back({{"name", result.baseline.name}, {"length_diff", diagnostic_json(d)}});
  }
  for (const auto& r : result.conditions) {
    ordered_json folds = ordered_json::array();
    for (const auto& f : r.folds)
      if (f.trace) {
        auto t = trace_json(*f.trace);
        t["fold"] = f.fold;
        folds.push_back(t);
      }
    ordered_json ranks = ordered_json::array();
    auto ranked = feature_importance_report(r);
    for (std::size_t i = 0; i < ranked.size() && i < kManifestRanks; ++i)
      ranks.push_back({{"rank", i + 1}, {"feature", ranked[i].name},
                       {"mean_importance", ranked[i].mean_importance}});
    rows.push_back({{"name", r.name},
                    {"leakage_audit", "pass"},
                    {"folds", folds},
                    {"importance_ranks", ranks},
                    {"length_diff", diagnostic_json(length_diff_diagnostic(r))}});
  }
  manifest["rows"] = rows;
  result.manifest = manifest.dump(2);
  return result;
}

void write_run_dir(const std::string& dir, const ExperimentResult& result) {
  fs::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw ConfigurationError("cannot write '" + (fs::path(dir) / name).string() + "'");
    return out;
  };
  std::vector<const RowResult*> all{&result.baseline};
  for (const auto& r : result.conditions) all.push_back(&r);

  open("manifest.json") << result.manifest << '\n';
  {
    auto out = open("folds.jsonl");
    learn::write_fold_plan(out, result.plan);
  }
  {
    auto out = open("metrics.jsonl");
    for (const auto* r : all) {
      for (const auto& f : r->folds) {
        ordered_json line = {{"row", r->name}, {"fold_plan", r->fold_digest}, {"fold", f.fold}};
        line.update(metrics_json(f.metrics));
        out << line.dump() << '\n';
      }
      ordered_json mean = {{"row", r->name}, {"fold_plan", r->fold_digest}, {"mean", true}};
      mean.update(metrics_json(mean_metrics(*r)));
      out << mean.dump() << '\n';
    }
  }
  {
    auto out = open("predictions.jsonl");
    for (const auto* r : all)
      for (const auto& f : r->folds)
        for (const auto& p : f.predictions)
          out << ordered_json{{"row", r->name},
                              {"fold", f.fold},
                              {"id", p.id},
                              {"gold", std::string(label_name(p.gold))},
                              {"predicted", std::string(label_name(p.predicted))},
                              {"probability", p.probability},
                              {"len_diff", p.len_diff}}
                     .dump()
              << '\n';
  }
  {
    auto out = open("importance.jsonl");
    for (const auto* r : all)
      for (const auto& f : r->folds)
        for (const auto& [name, value] : f.importance)
          out << ordered_json{{"row", r->name}, {"fold", f.fold}, {"feature", name},
                              {"importance", value}}
                     .dump()
              << '\n';
  }
  open("figure1.tsv") << figure1_tsv([&] {
    std::vector<RowResult> rows{result.baseline};
    rows.insert(rows.end(), result.conditions.begin(), result.conditions.end());
    return rows;
  }());
  open("report.txt") << render_report(result.baseline, result.conditions);
}

std::vector<RowResult> read_run_rows(const std::string& dir) {
  std::vector<RowResult> rows;
  std::map<std::string, std::size_t> index;
  auto for_lines = [&](const char* name, auto&& fn) {
    const auto path = (fs::path(dir) / name).string();
    std::ifstream in(path);
    if (!in) throw ConfigurationError("cannot open '" + path + "'");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      try {
        fn(json::parse(line));
      } catch (const json::exception& e) {
        throw ParseError(std::string(name) + ": " + e.what(), line_no);
      }
    }
  };
  auto fold_of = [&](const json& j) -> FoldOutcome& {
    auto it = index.find(j.at("row").get<std::string>());
    if (it == index.end()) throw ProtocolError("artifact row missing from metrics.jsonl");
    const int f = j.at("fold").get<int>();
    auto& folds = rows[it->second].folds;
    if (f < 0 || std::size_t(f) >= folds.size() || folds[f].fold != f)
      throw ProtocolError("artifact fold missing from metrics.jsonl");
    return folds[f];
  };

  for_lines("metrics.jsonl", [&](const json& j) {
    if (j.contains("mean")) return;
    const auto name = j.at("row").get<std::string>();
    auto [it, fresh] = index.emplace(name, rows.size());
    if (fresh) rows.push_back({name, j.at("fold_plan").get<std::string>(), {}});
    FoldOutcome f;
    f.fold = j.at("fold").get<int>();
    f.metrics = metrics_from_json(j);
    rows[it->second].folds.push_back(std::move(f));
  });
  for_lines("predictions.jsonl", [&](const json& j) {
    fold_of(j).predictions.push_back({j.at("id").get<std::string>(),
                                      parse_label(j.at("gold").get<std::string>()),
                                      parse_label(j.at("predicted").get<std::string>()),
                                      j.at("probability").get<double>(),
                                      j.at("len_diff").get<double>()});
  });
  for_lines("importance.jsonl", [&](const json& j) {
    fold_of(j).importance.emplace_back(j.at("feature").get<std::string>(),
                                       j.at("importance").get<double>());
  });
  if (rows.empty()) throw ProtocolError("run directory holds no metrics");
  return rows;
}

std::string replay_report(const std::string& dir) {
  auto rows = read_run_rows(dir);
  RowResult baseline = std::move(rows.front());
  rows.erase(rows.begin());
  return render_report(baseline, rows);
}

}  // namespace revjudge::experiments
