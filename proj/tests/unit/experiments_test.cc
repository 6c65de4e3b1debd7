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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/corpus/corpus.h"
#include "revjudge/experiments/config.h"
#include "revjudge/experiments/pipeline.h"
#include "revjudge/experiments/runner.h"

using namespace revjudge;
using namespace revjudge::experiments;
namespace fs = std::filesystem;

namespace {

const std::string kData = REVJUDGE_DATA_DIR;

const text::MetricsToolkit& kit() {
  static auto k =
      text::MetricsToolkit::load(text::ResourcePaths::in_directory(kData + "/resources"));
  return *k;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() /
             ("revjudge_exp_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RevisionPair labeled(std::string id, std::string s1, std::string s2, Label label,
                     Source source = Source::ArgRewrite) {
  RevisionPair p;
  p.id = std::move(id);
  p.s1 = std::move(s1);
  p.s2 = std::move(s2);
  p.label = label;
  p.source = source;
  return p;
}

const std::vector<std::string>& words() {
  static const std::vector<std::string> w = {
      "people", "message", "friends", "school", "family", "phone", "letter", "teacher",
      "paper",  "world",   "house",   "music",  "story",  "water", "table",  "window"};
  return w;
}

// Better pairs gain one or two words and NotBetter pairs lose them. Both
// classes also get random substitutions from words of mixed length, case and
// digits, which blurs every other cue (characters, specificity, divergence)
// while leaving the token count difference exact.
std::vector<RevisionPair> length_signal_pairs(std::size_t n, double better_share,
                                              std::uint32_t seed, const std::string& prefix,
                                              Source source = Source::ArgRewrite) {
  static const std::vector<std::string> noise = {
      "a", "it", "so", "communication", "extraordinarily", "1984", "42", "Susan", "Boston",
      "misunderstanding", "telecommunication", "yes", "the", "of", "2017", "Chicago"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, words().size() - 1);
  std::uniform_int_distribution<std::size_t> pick_noise(0, noise.size() - 1);
  std::vector<RevisionPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> base(8 + rng() % 5);
    for (auto& w : base) w = words()[pick(rng)];
    const bool better = double(i % 20) < better_share * 20.0;
    auto revised = base;
    const int k = 1 + int(rng() % 2);
    for (int e = 0; e < k; ++e) {
      if (better)
        revised.insert(revised.begin() + rng() % (revised.size() + 1), noise[pick_noise(rng)]);
      else
        revised.erase(revised.begin() + rng() % revised.size());
    }
    const int subs = 1 + int(rng() % 5);
    for (int e = 0; e < subs; ++e) {
      auto& side = rng() % 2 ? base : revised;
      side[rng() % side.size()] = noise[pick_noise(rng)];
    }
    out.push_back(labeled(prefix + std::to_string(i), "The " + join(base, " ") + ".",
                          "The " + join(revised, " ") + ".",
                          better ? Label::Better : Label::NotBetter, source));
  }
  return out;
}

TrainingConfig small_training(int trees = 40) {
  TrainingConfig cfg;
  cfg.forest.n_trees = trees;
  cfg.top_k = 200;
  return cfg;
}

// Per-fold macro values of a constant all-Better classifier, straight from
// the test-fold class counts.
std::array<double, 3> constant_better_oracle(const learn::FoldPlan& plan,
                                             const std::vector<Label>& labels) {
  std::array<double, 3> mean{};
  for (int f = 0; f < plan.k; ++f) {
    double better = 0, total = 0;
    for (auto i : plan.test_indices(f)) {
      total += 1;
      better += labels[i] == Label::Better;
    }
    const double p = better / total;
    const double f1 = 2 * p / (p + 1);
    mean[0] += p / 2 / plan.k;
    mean[1] += 0.5 / plan.k;
    mean[2] += f1 / 2 / plan.k;
  }
  return mean;
}

RowResult fake_row(const std::string& name, const std::vector<double>& f1, const std::string& digest,
                   const std::vector<std::vector<std::string>>& test_ids) {
  RowResult row{name, digest, {}};
  for (std::size_t f = 0; f < f1.size(); ++f) {
    FoldOutcome out;
    out.fold = int(f);
    out.metrics.macro = {f1[f], f1[f], f1[f]};
    for (const auto& id : test_ids[f]) out.predictions.push_back({id, Label::Better, Label::Better, 1, 0});
    row.folds.push_back(out);
  }
  return row;
}

}  // namespace

TEST_CASE("condition names and data requirements") {
  for (Condition c : all_conditions()) CHECK(parse_condition(condition_name(c)) == c);
  CHECK(condition_name(Condition::ArgRewritePlusAeswPlain) == "argrewrite+aesw-plain");
  CHECK_THROWS_AS(parse_condition("aesw"), ConfigurationError);
  CHECK(uses_argrewrite(Condition::ArgRewritePlusAeswAll));
  CHECK_FALSE(uses_argrewrite(Condition::AeswPlainOnly));
  CHECK_FALSE(aesw_mode(Condition::ArgRewriteOnly).has_value());
  CHECK(aesw_mode(Condition::AeswPlainOnly) == aesw::SampleMode::Plaintext);
}

TEST_CASE("config parsing resolves paths and rejects unknown keys") {
  auto cfg = parse_config(R"({
    "conditions": ["argrewrite", "aesw-plain"],
    "data": {"argrewrite": "corpus/a.jsonl", "aesw_sgml": "/abs/x.sgml"},
    "aesw_sample": {"n": 50, "flip_prob": 0.25},
    "folds": {"k": 5},
    "seeds": {"model": 99},
    "forest": {"n_trees": 7, "min_samples_leaf": 2},
    "smote": {"tolerance": 0.6}
  })", "/base/dir");
  CHECK(cfg.argrewrite == "/base/dir/corpus/a.jsonl");
  CHECK(cfg.aesw_sgml == "/abs/x.sgml");
  CHECK(cfg.conditions.size() == 2);
  CHECK(cfg.aesw_n == 50);
  CHECK(cfg.flip_prob == 0.25);
  CHECK(cfg.k == 5);
  CHECK(cfg.seeds.model == 99);
  CHECK(cfg.seeds.folds == Seeds{}.folds);
  CHECK(cfg.training.forest.n_trees == 7);
  CHECK(cfg.training.forest.min_samples_leaf == 2);
  CHECK(cfg.training.smote_tolerance == 0.6);

  CHECK_THROWS_AS(parse_config(R"({"data": {"argrewrite": "a"}, "forset": {}})", "/"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse_config(R"({"data": {"argrewrite": "a", "extra": "b"}})", "/"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse_config(R"({"data": {"argrewrite": "a"}, "conditions": ["aesw-all"]})", "/"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse_config(R"({"data": {"argrewrite": "a"}, "folds": {"k": "ten"}})", "/"),
                  ConfigurationError);
  CHECK_THROWS_AS(parse_config("{", "/"), ConfigurationError);

  auto again = parse_config(config_to_json(cfg), "/elsewhere");
  CHECK(config_to_json(again) == config_to_json(cfg));
}

TEST_CASE("majority baseline row on the bundled corpus") {
  auto parsed = parse_pairs_file(kData + "/corpus/argrewrite_standin.jsonl");
  auto pairs = aggregate_labels(parsed.entries);
  REQUIRE(pairs.size() == 940);
  LabeledSet set;
  for (const auto& p : pairs) {
    features::PairAnalysis a;
    a.id = p.id;
    set.analyses.push_back(a);
    set.labels.push_back(*p.label);
  }
  auto plan = learn::make_folds(set.ids(), set.labels, 10, 7);
  auto row = run_baseline(set, plan);
  auto mean = mean_metrics(row).macro;
  auto oracle = constant_better_oracle(plan, set.labels);
  CHECK(mean.precision == doctest::Approx(oracle[0]).epsilon(1e-12));
  CHECK(mean.recall == doctest::Approx(oracle[1]).epsilon(1e-12));
  CHECK(mean.f1 == doctest::Approx(oracle[2]).epsilon(1e-12));
  CHECK(std::abs(mean.precision - 0.417) <= 0.002);
  CHECK(std::abs(mean.recall - 0.500) <= 0.002);
  CHECK(std::abs(mean.f1 - 0.454) <= 0.002);

  auto table = compare_conditions(row, {});
  CHECK(table.rows.size() == 1);
  CHECK(table.render().find("| majority-baseline | **0.417** | **0.500** | **0.455** |") !=
        std::string::npos);
}

TEST_CASE("compare_conditions stars, bold and fold plan checks") {
  std::vector<std::vector<std::string>> ids(10);
  for (int f = 0; f < 10; ++f) ids[f] = {"a" + std::to_string(f), "b" + std::to_string(f)};
  std::vector<double> base_f1 = {0.45, 0.46, 0.44, 0.45, 0.47, 0.43, 0.45, 0.46, 0.44, 0.45};
  auto base = fake_row("majority-baseline", base_f1, "plan", ids);

  auto same = fake_row("same", base_f1, "plan", ids);
  std::vector<double> lifted = base_f1;
  for (auto& v : lifted) v += 0.1;
  auto better = fake_row("better", lifted, "plan", ids);
  std::vector<double> sunk = base_f1;
  for (std::size_t i = 0; i < sunk.size(); ++i) sunk[i] -= 0.1 + 0.001 * double(i);
  auto worse = fake_row("worse", sunk, "plan", ids);

  auto table = compare_conditions(base, {same, better, worse});
  REQUIRE(table.rows.size() == 4);
  for (int c = 0; c < 3; ++c) {
    CHECK_FALSE(table.rows[1].star[c]);
    CHECK(table.rows[1].significance[c]->p_value == 1.0);
    CHECK(table.rows[2].star[c]);
    CHECK(table.rows[2].bold[c]);
    CHECK_FALSE(table.rows[0].bold[c]);
    CHECK(table.rows[3].significance[c]->p_value < 0.05);
    CHECK_FALSE(table.rows[3].star[c]);
  }
  CHECK_FALSE(table.rows[0].significance[0].has_value());

  auto other_plan = fake_row("x", base_f1, "other", ids);
  CHECK_THROWS_AS(compare_conditions(base, {other_plan}), ProtocolError);
  auto moved = ids;
  std::swap(moved[0][0], moved[1][0]);
  CHECK_THROWS_AS(compare_conditions(base, {fake_row("y", base_f1, "plan", moved)}),
                  ProtocolError);
}

TEST_CASE("length difference diagnostic") {
  std::vector<RevisionPair> pairs = {
      labeled("1", "a b", "a b c d", Label::Better),          // +2
      labeled("2", "a b c", "a b c d e f", Label::Better),    // +3
      labeled("3", "a b c d e", "a b", Label::NotBetter),     // -3
      labeled("4", "a b c d", "a b c d e", Label::NotBetter)  // +1
  };
  auto d = length_diff_diagnostic(
      {Label::Better, Label::Better, Label::NotBetter, Label::NotBetter}, pairs);
  REQUIRE(d.better.has_value());
  REQUIRE(d.not_better.has_value());
  CHECK(*d.better == doctest::Approx(2.5));
  CHECK(*d.not_better == doctest::Approx(-1.0));
  CHECK(d.n_better == 2);
  CHECK(d.n_not_better == 2);

  auto all_better = length_diff_diagnostic(std::vector<Label>(4, Label::Better), pairs);
  CHECK_FALSE(all_better.not_better.has_value());
  CHECK(*all_better.better == doctest::Approx(0.75));
  CHECK_THROWS_AS(length_diff_diagnostic({Label::Better}, pairs), ArgumentError);
}

TEST_CASE("feature importance report averages over folds") {
  RowResult row{"r", "plan", {}};
  FoldOutcome a, b;
  a.importance = {{"x", 0.6}, {"y", 0.4}};
  b.importance = {{"y", 0.7}, {"z", 0.3}};
  row.folds = {a, b};
  auto ranked = feature_importance_report(row);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].name == "y");
  CHECK(ranked[0].mean_importance == doctest::Approx(0.55));
  CHECK(ranked[1].name == "x");
  CHECK(ranked[1].mean_importance == doctest::Approx(0.3));
  CHECK(ranked[2].name == "z");
  double total = 0;
  for (const auto& r : ranked) total += r.mean_importance;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("train_bundle applies SMOTE past the tolerance and round-trips") {
  auto pairs = length_signal_pairs(80, 0.8, 3, "p");
  auto set = analyze_labeled(pairs, kit());
  std::vector<const features::PairAnalysis*> ptrs;
  for (const auto& a : set.analyses) ptrs.push_back(&a);

  TrainingTrace trace;
  auto bundle = train_bundle(ptrs, set.labels, small_training(), 5, 1, &trace);
  CHECK(trace.smote_fired);
  CHECK(trace.minority == Label::NotBetter);
  CHECK(trace.majority_share == doctest::Approx(0.8));
  CHECK(trace.synthetic == 64 - 16);
  CHECK(trace.model_id == bundle.model_id());
  CHECK(bundle.forest.schema_version == bundle.schema.fingerprint());
  CHECK(trace.selected == bundle.forest.columns.size());

  TrainingConfig tolerant = small_training();
  tolerant.smote_tolerance = 0.85;
  TrainingTrace calm;
  train_bundle(ptrs, set.labels, tolerant, 5, 1, &calm);
  CHECK_FALSE(calm.smote_fired);
  CHECK(calm.synthetic == 0);

  std::stringstream buf;
  bundle.save(buf);
  auto loaded = ModelBundle::load(buf);
  CHECK(loaded.model_id() == bundle.model_id());
  CHECK(loaded.forest == bundle.forest);
  for (const auto& a : set.analyses) {
    auto x = predict_with_explanation(bundle, a);
    auto y = predict_with_explanation(loaded, a);
    CHECK(x.prediction.probability == y.prediction.probability);
    CHECK((x.prediction.label == Label::Better) == (x.prediction.probability >= 0.5));
    for (std::size_t i = 0; i < x.top.size(); ++i) {
      CHECK(x.top[i].value != 0.0);
      if (i) CHECK(x.top[i - 1].importance >= x.top[i].importance);
    }
    CHECK(x.top.size() <= kDefaultContributions);
  }

  auto other = bundle.forest;
  other.schema_version = "0000000000000000";
  CHECK_THROWS_AS(ModelBundle::make(bundle.schema, other), ConfigurationError);
  std::stringstream junk("revjudge-model 2\n");
  CHECK_THROWS_AS(ModelBundle::load(junk), SchemaError);
}

TEST_CASE("leakage audit") {
  auto pairs = length_signal_pairs(12, 0.5, 9, "q");
  auto set = analyze_labeled(pairs, kit());
  std::vector<features::PairAnalysis> train(set.analyses.begin(), set.analyses.begin() + 8);
  auto schema = features::build_schema(train, 1);
  std::vector<std::string> train_ids, test_ids;
  for (int i = 0; i < 8; ++i) train_ids.push_back(set.analyses[i].id);
  for (int i = 8; i < 12; ++i) test_ids.push_back(set.analyses[i].id);
  CHECK_NOTHROW(audit_fold(train_ids, test_ids, schema));
  CHECK_THROWS_AS(audit_fold(train_ids, {train_ids[3]}, schema), ProtocolError);
  auto fewer = train_ids;
  fewer.pop_back();
  CHECK_THROWS_AS(audit_fold(fewer, test_ids, schema), ProtocolError);
  auto swapped = fewer;
  swapped.push_back(test_ids[0]);
  CHECK_THROWS_AS(audit_fold(swapped, {test_ids[1]}, schema), ProtocolError);
}

TEST_CASE("conditions: determinism, empty AESW, collisions, length signal") {
  auto ar = analyze_labeled(length_signal_pairs(100, 0.75, 11, "ar"), kit());
  auto aesw = analyze_labeled(length_signal_pairs(40, 0.5, 12, "ae", Source::AESW), kit());
  auto plan = learn::make_folds(ar.ids(), ar.labels, 5, 21);
  const auto cfg = small_training(30);

  auto q1 = run_condition("q1", ar, true, nullptr, plan, cfg, 8);
  auto q1_again = run_condition("q1", ar, true, nullptr, plan, cfg, 8);
  REQUIRE(q1.folds.size() == 5);
  for (int f = 0; f < 5; ++f) {
    CHECK(q1.folds[f].predictions == q1_again.folds[f].predictions);
    CHECK(q1.folds[f].metrics == q1_again.folds[f].metrics);
    CHECK(q1.folds[f].trace->model_id == q1_again.folds[f].trace->model_id);
  }

  LabeledSet empty;
  auto q3_empty = run_condition("q3", ar, true, &empty, plan, cfg, 8);
  for (int f = 0; f < 5; ++f) {
    CHECK(q3_empty.folds[f].predictions == q1.folds[f].predictions);
    CHECK(q3_empty.folds[f].trace->model_id == q1.folds[f].trace->model_id);
  }
  CHECK_THROWS_AS(run_condition("q2", ar, false, &empty, plan, cfg, 8), ArgumentError);
  CHECK_THROWS_AS(run_condition("q2", ar, false, nullptr, plan, cfg, 8), ArgumentError);

  auto q2 = run_condition("q2", ar, false, &aesw, plan, cfg, 8);
  auto q3 = run_condition("q3", ar, true, &aesw, plan, cfg, 8);
  for (int f = 0; f < 5; ++f) {
    CHECK(q2.folds[f].trace->training_pairs == 40);
    CHECK(q3.folds[f].trace->training_pairs == 80 + 40);
  }
  CHECK_NOTHROW(compare_conditions(run_baseline(ar, plan), {q1, q2, q3}));

  auto clash = aesw;
  clash.analyses[0].id = ar.analyses[5].id;
  CHECK_THROWS_AS(run_condition("q3", ar, true, &clash, plan, cfg, 8), ProtocolError);

  auto ranked = feature_importance_report(q1);
  REQUIRE_FALSE(ranked.empty());
  CHECK(ranked[0].name == "len_tokens_diff");
  for (const auto& f : q1.folds) {
    double total = 0;
    for (const auto& [name, v] : f.importance) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("tuning picks the best grid point") {
  auto dev = analyze_labeled(length_signal_pairs(60, 0.5, 31, "dv", Source::AESW), kit());
  TuningConfig tuning;
  tuning.enabled = true;
  tuning.grid.n_trees = {5, 20};
  tuning.grid.min_samples_leaf = {1, 30};
  auto out = tune_forest(dev, small_training(), tuning, 3);
  REQUIRE(out.scores.size() == 4);
  double best = -1;
  learn::ForestParams expect;
  for (const auto& [p, s] : out.scores)
    if (s > best) {
      best = s;
      expect = p;
    }
  CHECK(out.chosen == expect);
}

TEST_CASE("run directory replays and reruns byte-identically") {
  auto dir = scratch("run");
  {
    std::ifstream in(kData + "/corpus/argrewrite_standin.jsonl");
    std::ofstream out(dir / "ar.jsonl");
    std::string line;
    for (int i = 0; i < 120 && std::getline(in, line); ++i) out << line << '\n';
  }
  std::ofstream(dir / "config.json") << R"({
    "conditions": ["argrewrite", "aesw-plain", "argrewrite+aesw-plain"],
    "data": {"argrewrite": "ar.jsonl", "aesw_sgml": ")" << kData << R"(/corpus/aesw_standin.sgml"},
    "aesw_sample": {"n": 60},
    "folds": {"k": 4},
    "features": {"top_k": 150},
    "forest": {"n_trees": 15}
  })";
  auto cfg = load_config((dir / "config.json").string());
  auto first = run_experiment(cfg, kit());
  write_run_dir((dir / "a").string(), first);
  write_run_dir((dir / "b").string(), run_experiment(cfg, kit()));

  for (const char* name : {"metrics.jsonl", "predictions.jsonl", "importance.jsonl",
                           "manifest.json", "report.txt", "figure1.tsv", "folds.jsonl"})
    CHECK_MESSAGE(slurp(dir / "a" / name) == slurp(dir / "b" / name), name);
  CHECK(replay_report((dir / "a").string()) == slurp(dir / "a" / "report.txt"));

  auto rows = read_run_rows((dir / "a").string());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].name == "majority-baseline");
  CHECK(rows[1].folds[2].predictions == first.conditions[0].folds[2].predictions);
  CHECK(rows[3].folds[1].importance == first.conditions[2].folds[1].importance);

  auto manifest = slurp(dir / "a" / "manifest.json");
  CHECK(manifest.find("\"aesw_plain_pairs\": 60") != std::string::npos);
  CHECK(manifest.find("\"smote_fired\": true") != std::string::npos);
  CHECK(manifest.find("\"leakage_audit\": \"pass\"") != std::string::npos);

  // A persisted fold plan is reused as-is.
  cfg.fold_plan = (dir / "a" / "folds.jsonl").string();
  cfg.conditions = {Condition::ArgRewriteOnly};
  auto reused = run_experiment(cfg, kit());
  CHECK(reused.plan == first.plan);
  CHECK(reused.conditions[0].folds[0].predictions == first.conditions[0].folds[0].predictions);

  // An absent plan file is written on first use.
  cfg.fold_plan = (dir / "plan.jsonl").string();
  auto fresh = run_experiment(cfg, kit());
  REQUIRE(fs::exists(dir / "plan.jsonl"));
  CHECK(slurp(dir / "plan.jsonl") == slurp(dir / "a" / "folds.jsonl"));
  CHECK(fresh.plan == first.plan);
  fs::remove_all(dir);
}
