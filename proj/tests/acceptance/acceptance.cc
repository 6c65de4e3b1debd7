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

// Acceptance run: one PASS/FAIL line per primary criterion, exit status 1
// if any fails. Inputs default to the bundled stand-in data; point
// REVJUDGE_ARGREWRITE / REVJUDGE_AESW_SGML / REVJUDGE_RESOURCES at the
// released material to run against it.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "feature_oracles.h"
#include "oracles.h"
#include "pair_generator.h"
#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/corpus/agreement.h"
#include "revjudge/corpus/corpus.h"
#include "revjudge/experiments/runner.h"
#include "revjudge/learn/smote.h"
#include "revjudge/textmetrics/bleu.h"
#include "revjudge/textmetrics/distance.h"

using namespace revjudge;
using namespace revjudge::experiments;
namespace fs = std::filesystem;

namespace {

const std::string kData = REVJUDGE_DATA_DIR;

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

bool real_aesw() {
  const char* v = std::getenv("REVJUDGE_AESW_SGML");
  return v && *v;
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  if (!v.pass) ++failures;
  std::cout << (v.pass ? "PASS " : "FAIL ") << name << ":" << v.detail.str() << std::endl;
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << x;
  return s.str();
}

ExperimentConfig acceptance_config() {
  auto cfg = load_config(kData + "/experiments/standin.json");
  cfg.argrewrite = env_or("REVJUDGE_ARGREWRITE", cfg.argrewrite);
  if (real_aesw()) cfg.aesw_sgml = env_or("REVJUDGE_AESW_SGML", "");
  cfg.resources = env_or("REVJUDGE_RESOURCES", kData + "/resources");
  cfg.conditions = all_conditions();
  cfg.fold_plan.reset();
  cfg.validate();
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const RowResult& row_named(const ExperimentResult& r, const std::string& name) {
  for (const auto& row : r.conditions)
    if (row.name == name) return row;
  throw ArgumentError("no row " + name);
}

double not_better_recall(const RowResult& row) {
  return mean_metrics(row).per_class.at(Label::NotBetter).recall;
}

// Constant-Better prediction on every fold: precision of Better is the
// fold's Better share, NotBetter scores zero.
std::array<double, 3> constant_better_oracle(const learn::FoldPlan& plan,
                                             const std::map<std::string, Label>& gold) {
  std::array<double, 3> acc{};
  for (int f = 0; f < plan.k; ++f) {
    const auto test = plan.test_indices(f);
    double better = 0;
    for (auto i : test) better += gold.at(plan.ids[i]) == Label::Better;
    const double p = better / double(test.size());
    acc[0] += p / 2 / plan.k;
    acc[1] += 0.5 / plan.k;
    acc[2] += (p > 0 ? 2 * p / (1 + p) : 0.0) / 2 / plan.k;
  }
  return acc;
}

double segment_deviation(std::span<const double> p, std::span<const double> a,
                         std::span<const double> b) {
  double ab2 = 0, dot = 0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    ab2 += (b[c] - a[c]) * (b[c] - a[c]);
    dot += (p[c] - a[c]) * (b[c] - a[c]);
  }
  const double t = ab2 > 0 ? std::clamp(dot / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const double q = a[c] + t * (b[c] - a[c]);
    d2 += (p[c] - q) * (p[c] - q);
  }
  return std::sqrt(d2);
}

}  // namespace

int main() {
  const auto cfg = acceptance_config();
  const auto toolkit =
      text::MetricsToolkit::load(text::ResourcePaths::in_directory(*cfg.resources));
  std::cout << "argrewrite: " << cfg.argrewrite << "\n"
            << "aesw: " << (real_aesw() ? *cfg.aesw_sgml : "bundled synthetic fixture") << "\n";

  criterion("corpus statistics", [&](Verdict& v) {
    auto parsed = parse_pairs_file(cfg.argrewrite);
    auto dist = class_distribution(aggregate_labels(parsed.entries));
    v.detail << " all {" << dist[Label::Better] << ", " << dist[Label::NotBetter] << "}";
    v.require(dist[Label::Better] == 784 && dist[Label::NotBetter] == 156, "{784, 156}");

    const bool raw = std::all_of(parsed.entries.begin(), parsed.entries.end(),
                                 [](const CorpusEntry& e) { return e.annotations.has_value(); });
    if (raw) {
      auto kept = filter_by_majority(parsed.entries, 5);
      auto kept_dist = class_distribution(aggregate_labels(kept));
      v.detail << "; majority>=5 " << kept.size() << " {" << kept_dist[Label::Better] << ", "
               << kept_dist[Label::NotBetter] << "}";
      v.require(kept.size() == 748, "748 items");
      v.require(kept_dist[Label::Better] == 658 && kept_dist[Label::NotBetter] == 90,
                "{658, 90}");
      const double k_all = fleiss_kappa(rating_matrix(parsed.entries));
      const double k_kept = fleiss_kappa(rating_matrix(kept));
      v.detail << "; kappa " << fmt(k_all) << " / " << fmt(k_kept);
      v.require(std::abs(k_all - 0.201) <= 0.005, "kappa 0.201");
      v.require(std::abs(k_kept - 0.263) <= 0.005, "kappa 0.263");
    } else {
      v.detail << "; no raw labels, kappa fixtures only";
      v.require(false, "748/{658, 90} needs raw labels");
    }
    v.require(std::abs(fleiss_kappa({{7, 0}, {0, 7}}) - 1.0) < 1e-12, "split fixture kappa 1");
    bool undefined = false;
    try {
      fleiss_kappa({{7, 0}, {7, 0}});
    } catch (const UndefinedKappaError&) {
      undefined = true;
    }
    v.require(undefined, "undefined-kappa fixture throws");
  });

  criterion("metric and distance oracles", [&](Verdict& v) {
    std::mt19937 rng(20180701);
    double worst_bleu = 0;
    for (int t = 0; t < 200; ++t) {
      auto ref = oracle::random_tokens(rng, 12, 6);
      auto hyp = oracle::random_tokens(rng, 12, 6);
      const double got =
          text::sentence_bleu(text::tokenize(join(ref, " ")), text::tokenize(join(hyp, " ")));
      worst_bleu =
          std::max(worst_bleu, std::abs(got - oracle::direct_bleu(ref, hyp, 4, text::kBleuEpsilon)));
    }
    v.detail << " bleu max |diff| " << worst_bleu;
    v.require(worst_bleu <= 1e-9, "bleu within 1e-9");

    int lev_mismatch = 0;
    for (int t = 0; t < 500; ++t) {
      const auto a = oracle::random_string(rng, 8, "abcde");
      const auto b = oracle::random_string(rng, 8, "abcde");
      if (text::levenshtein(a, b, text::Granularity::Char) != oracle::naive_levenshtein(a, b))
        ++lev_mismatch;
    }
    v.detail << "; levenshtein mismatches " << lev_mismatch << "/500";
    v.require(lev_mismatch == 0, "levenshtein");

    int negative = 0;
    std::uniform_int_distribution<int> count(0, 6);
    for (int t = 0; t < 1000; ++t) {
      std::vector<double> p(1 + t % 12), q(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = count(rng);
        q[i] = count(rng);
      }
      const double kl = text::kl_divergence(p, q);
      if (!(kl >= 0.0) || !std::isfinite(kl)) ++negative;
    }
    v.detail << "; kl negative/nonfinite " << negative << "/1000";
    v.require(negative == 0, "kl >= 0");

    const std::vector<double> a{1, 0}, b{1, 1};
    const double ln2 = text::kl_divergence(a, b, 1e-12);
    v.detail << "; kl fixture " << fmt(ln2, 9);
    v.require(std::abs(ln2 - std::log(2.0)) <= 1e-6, "ln 2 fixture");
  });

  criterion("SMOTE geometry", [&](Verdict& v) {
    std::mt19937 rng(5307);
    std::normal_distribution<double> coord(0.0, 3.0);
    std::size_t produced = 0;
    double worst = 0;
    bool counts_exact = true;
    for (int set = 0; set < 20; ++set) {
      const std::size_t n = 2 + rng() % 30, dims = 1 + rng() % 8, want = 50;
      learn::Matrix minority(n, dims);
      for (auto& x : minority.data) x = coord(rng);
      auto result = learn::smote(minority, want, 5, rng());
      counts_exact = counts_exact && result.synthetic.rows == want;
      produced += result.synthetic.rows;
      for (std::size_t s = 0; s < result.synthetic.rows; ++s) {
        double best = INFINITY;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            best = std::min(best, segment_deviation(result.synthetic.row(s), minority.row(i),
                                                    minority.row(j)));
        worst = std::max(worst, best);
      }
    }
    v.detail << " " << produced << " points, max deviation " << worst;
    v.require(produced == 1000 && counts_exact, "exact requested count");
    v.require(worst <= 1e-9, "on minority segments");
  });

  criterion("feature-vector swap property", [&](Verdict& v) {
    std::mt19937 rng(4242);
    std::vector<RevisionPair> pairs;
    for (int i = 0; i < 200; ++i) pairs.push_back(oracle::random_pair(rng, i));
    std::vector<features::PairAnalysis> analyses;
    for (const auto& p : pairs) analyses.push_back(features::analyze(p, *toolkit));
    auto schema = features::build_schema(analyses, 2);
    int violations = 0;
    std::string first;
    for (const auto& p : pairs) {
      const auto fwd = features::extract(p, schema, *toolkit).dense(schema.width());
      const auto rev = features::extract(oracle::make_pair(p.id, p.s2, p.s1), schema, *toolkit)
                           .dense(schema.width());
      auto why = oracle::swap_violation(fwd, rev, schema);
      if (!why.empty()) {
        ++violations;
        if (first.empty()) first = p.id + ": " + why;
      }
    }
    v.detail << " violations " << violations << "/200" << (first.empty() ? "" : " " + first);
    v.require(violations == 0, "swap property");
  });

  // The remaining criteria share two full runs of every condition.
  const auto scratch = fs::temp_directory_path() / ("revjudge_accept_" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  std::optional<ExperimentResult> first;
  std::string run_error;
  try {
    first = run_experiment(cfg, *toolkit);
    write_run_dir((scratch / "a").string(), *first);
  } catch (const std::exception& e) {
    run_error = e.what();
  }
  auto need_run = [&](Verdict& v) {
    if (!first) throw std::runtime_error("experiment failed: " + run_error);
    (void)v;
  };

  criterion("majority-baseline row", [&](Verdict& v) {
    need_run(v);
    const auto mean = mean_metrics(first->baseline).macro;
    v.detail << " P/R/F1 " << fmt(mean.precision, 3) << " / " << fmt(mean.recall, 3) << " / "
             << fmt(mean.f1, 3);
    v.require(std::abs(mean.precision - 0.417) <= 0.002, "precision 0.417");
    v.require(std::abs(mean.recall - 0.500) <= 0.002, "recall 0.500");
    v.require(std::abs(mean.f1 - 0.454) <= 0.002, "f1 0.454");

    std::map<std::string, Label> gold;
    for (const auto& p : aggregate_labels(parse_pairs_file(cfg.argrewrite).entries))
      gold[p.id] = *p.label;
    const auto oracle_row = constant_better_oracle(first->plan, gold);
    v.require(std::abs(oracle_row[0] - mean.precision) < 1e-12 &&
                  std::abs(oracle_row[1] - mean.recall) < 1e-12 &&
                  std::abs(oracle_row[2] - mean.f1) < 1e-12,
              "matches constant-Better oracle");
  });

  criterion("per-fold leakage audit", [&](Verdict& v) {
    need_run(v);
    auto data = load_datasets(cfg);
    std::map<std::string, std::vector<std::string>> aesw_ids;
    for (const auto& p : data.aesw_all) aesw_ids["all"].push_back(p.id);
    for (const auto& p : data.aesw_plain) aesw_ids["plain"].push_back(p.id);
    const auto& plan = first->plan;
    std::size_t checked = 0;
    for (const auto& row : first->conditions) {
      const auto c = parse_condition(row.name);
      v.require(row.fold_digest == plan.digest(), row.name + " fold plan");
      v.require(int(row.folds.size()) == plan.k, row.name + " fold count");
      for (const auto& fold : row.folds) {
        std::vector<std::string> train;
        if (uses_argrewrite(c))
          for (auto i : plan.train_indices(fold.fold)) train.push_back(plan.ids[i]);
        if (auto mode = aesw_mode(c)) {
          const auto& extra = aesw_ids[*mode == aesw::SampleMode::All ? "all" : "plain"];
          train.insert(train.end(), extra.begin(), extra.end());
        }
        std::set<std::string> expected_test, seen_test;
        for (auto i : plan.test_indices(fold.fold)) expected_test.insert(plan.ids[i]);
        for (const auto& p : fold.predictions) seen_test.insert(p.id);
        std::size_t overlap = 0;
        for (const auto& id : train) overlap += seen_test.count(id);
        const std::string where = row.name + " fold " + std::to_string(fold.fold);
        v.require(overlap == 0, where + " train/test overlap");
        v.require(seen_test == expected_test, where + " test ids");
        v.require(fold.trace && fold.trace->training_pairs == train.size(),
                  where + " training size");
        v.require(fold.trace && fold.trace->training_digest == features::id_digest(train),
                  where + " vocabulary source");
        ++checked;
      }
    }
    v.detail << " " << checked << " folds over " << first->conditions.size() << " conditions";
    v.require(first->conditions.size() == all_conditions().size(), "all conditions ran");
  });

  // Second identical run, for the determinism criteria.
  std::optional<ExperimentResult> second;
  try {
    if (first) {
      second = run_experiment(cfg, *toolkit);
      write_run_dir((scratch / "b").string(), *second);
    }
  } catch (const std::exception& e) {
    run_error = e.what();
  }

  criterion("directional targets", [&](Verdict& v) {
    need_run(v);
    const double base_f1 = mean_metrics(first->baseline).macro.f1;
    const auto& ar = row_named(*first, "argrewrite");
    const auto& blended = row_named(*first, "argrewrite+aesw-plain");
    const double ar_f1 = mean_metrics(ar).macro.f1;
    v.detail << " argrewrite F1 " << fmt(ar_f1, 3) << " vs baseline " << fmt(base_f1, 3);
    v.require(ar_f1 >= base_f1 + 0.02, "argrewrite F1 >= baseline + 0.02");

    const double r_ar = not_better_recall(ar), r_bl = not_better_recall(blended);
    v.detail << "; NotBetter recall argrewrite " << fmt(r_ar, 3) << ", +aesw-plain "
             << fmt(r_bl, 3);
    if (real_aesw()) {
      v.require(r_bl > r_ar, "blended NotBetter recall exceeds argrewrite");
    } else {
      v.detail << " (synthetic AESW: ordering logged, determinism asserted)";
      if (!second) throw std::runtime_error("second run failed: " + run_error);
      const auto& again = row_named(*second, "argrewrite+aesw-plain");
      bool same = again.folds.size() == blended.folds.size();
      for (std::size_t f = 0; same && f < blended.folds.size(); ++f)
        same = again.folds[f].predictions == blended.folds[f].predictions &&
               again.folds[f].trace->model_id == blended.folds[f].trace->model_id;
      v.require(same, "blended condition deterministic");
    }
  });

  criterion("end-to-end determinism", [&](Verdict& v) {
    need_run(v);
    if (!second) throw std::runtime_error("second run failed: " + run_error);
    const auto a = slurp(scratch / "a" / "metrics.jsonl");
    const auto b = slurp(scratch / "b" / "metrics.jsonl");
    v.detail << " metrics.jsonl " << a.size() << " bytes, digest " << to_hex(fnv1a64(a));
    v.require(!a.empty(), "metrics written");
    v.require(a == b, "byte-identical metrics.jsonl");
  });

  fs::remove_all(scratch);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failing" << std::endl;
  return failures ? 1 : 0;
}
