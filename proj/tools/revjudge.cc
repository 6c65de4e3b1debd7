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

// revjudge command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "revjudge/aesw/aesw.h"
#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/corpus/agreement.h"
#include "revjudge/corpus/corpus.h"
#include "revjudge/experiments/config.h"
#include "revjudge/experiments/pipeline.h"
#include "revjudge/experiments/runner.h"
#include "revjudge/service/service.h"
#include "revjudge/textmetrics/toolkit.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace revjudge;

namespace {

std::shared_ptr<const text::MetricsToolkit> load_toolkit(const std::string& dir) {
  return text::MetricsToolkit::load(
      text::ResourcePaths::in_directory(dir.empty() ? text::default_resource_dir() : dir));
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open '" + path + "'");
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return to_hex(fnv1a64(bytes.str()));
}

ordered_json counts_json(const std::map<Label, std::size_t>& counts) {
  ordered_json out;
  for (Label l : {Label::Better, Label::NotBetter}) {
    auto it = counts.find(l);
    out[std::string(label_name(l))] = it == counts.end() ? 0 : it->second;
  }
  return out;
}

int cmd_ingest(const std::string& input, bool hashes, bool strict, const std::string& out) {
  ParseOptions options;
  options.strict = strict;
  auto parsed = parse_pairs_file(input, options);
  auto pairs = aggregate_labels(parsed.entries);
  ordered_json summary = {{"input", input},
                          {"entries", parsed.entries.size()},
                          {"rejected", parsed.rejected.size()}};
  bool labeled = std::all_of(pairs.begin(), pairs.end(), [](const auto& p) { return bool(p.label); });
  if (labeled) summary["class_distribution"] = counts_json(class_distribution(pairs));
  if (hashes) {
    summary["content_hash"] = file_hash(input);
    ordered_json per_pair = ordered_json::object();
    for (const auto& p : pairs) per_pair[p.id] = to_hex(fnv1a64(p.s1 + '\x1f' + p.s2));
    summary["pair_hashes"] = per_pair;
  }
  for (const auto& r : parsed.rejected)
    std::cerr << "rejected line " << r.line << " (" << r.id << "): " << r.reason << '\n';
  if (!out.empty()) {
    std::ofstream o(out);
    if (!o) throw ConfigurationError("cannot write '" + out + "'");
    write_pairs(o, parsed.entries);
  }
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int cmd_agreement(const std::string& input, std::size_t threshold) {
  auto parsed = parse_pairs_file(input);
  auto report = [](const std::vector<CorpusEntry>& entries) {
    auto r = agreement_report(entries);
    return ordered_json{{"items", r.n_items},
                        {"raters", r.n_raters},
                        {"kappa", r.kappa},
                        {"band", std::string(band_name(r.band))},
                        {"class_distribution", counts_json(r.class_counts)}};
  };
  ordered_json out = {{"all", report(parsed.entries)}};
  if (threshold > 0)
    out["majority_at_least_" + std::to_string(threshold)] =
        report(filter_by_majority(parsed.entries, threshold));
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct ExtractArgs {
  std::string input, mode = "all", out, dev_out;
  std::size_t n = 5000;
  double flip_prob = 0.5, dev_fraction = 0.1;
  std::uint64_t seed = 0;
};

int cmd_aesw_extract(const ExtractArgs& a) {
  auto sentences = aesw::parse_aesw_file(a.input);
  std::vector<RevisionPair> pool;
  for (const auto& s : sentences)
    if (auto p = aesw::reconstruct_pair(s)) pool.push_back(std::move(*p));
  aesw::DevSplit split;
  if (a.dev_fraction > 0.0)
    split = aesw::split_dev(pool, a.dev_fraction, mix_seed(a.seed, 0xde7));
  else
    split.rest = pool;
  aesw::SampleConfig sc;
  sc.n = a.n;
  sc.mode = aesw::parse_sample_mode(a.mode);
  sc.flip_prob = a.flip_prob;
  sc.seed = a.seed;
  auto sample = aesw::flip_labels(aesw::sample_pairs(split.rest, sc), a.flip_prob,
                                  mix_seed(a.seed, 0xf11b));
  {
    std::ofstream out(a.out);
    if (!out) throw ConfigurationError("cannot write '" + a.out + "'");
    aesw::write_export(out, sample);
  }
  std::size_t flipped = 0;
  for (const auto& p : sample) flipped += p.meta.at("flipped") == "true";
  ordered_json manifest = {{"input", a.input},
                           {"input_hash", file_hash(a.input)},
                           {"mode", std::string(aesw::sample_mode_name(sc.mode))},
                           {"n", a.n},
                           {"flip_prob", a.flip_prob},
                           {"seed", a.seed},
                           {"sentences", sentences.size()},
                           {"edited_pairs", pool.size()},
                           {"dev_fraction", a.dev_fraction},
                           {"dev_pairs", split.dev.size()},
                           {"eligible", aesw::eligible_pairs(split.rest, sc).size()},
                           {"sampled", sample.size()},
                           {"flipped", flipped},
                           {"output_hash", file_hash(a.out)}};
  if (!a.dev_out.empty()) {
    auto dev = aesw::flip_labels(split.dev, a.flip_prob, mix_seed(a.seed, 0xdef1));
    std::ofstream out(a.dev_out);
    if (!out) throw ConfigurationError("cannot write '" + a.dev_out + "'");
    aesw::write_export(out, dev);
  }
  std::ofstream(a.out + ".manifest.json") << manifest.dump(2) << '\n';
  std::cout << manifest.dump(2) << '\n';
  return 0;
}

struct TrainArgs {
  std::string config, condition = "argrewrite", argrewrite, aesw_sample, out, resources;
  std::uint64_t seed = 4;
};

int cmd_train(const TrainArgs& a) {
  experiments::ExperimentConfig cfg;
  if (!a.config.empty()) cfg = experiments::load_config(a.config);
  if (!a.argrewrite.empty()) cfg.argrewrite = fs::absolute(a.argrewrite).string();
  if (a.config.empty()) cfg.seeds.model = a.seed;
  const auto condition = experiments::parse_condition(a.condition);
  cfg.conditions = {condition};
  cfg.tuning.enabled = false;
  if (auto mode = experiments::aesw_mode(condition); mode && !a.aesw_sample.empty()) {
    auto& slot = *mode == aesw::SampleMode::All ? cfg.aesw_all_sample : cfg.aesw_plain_sample;
    slot = fs::absolute(a.aesw_sample).string();
  }
  cfg.validate();
  auto toolkit = load_toolkit(a.resources.empty() && cfg.resources ? *cfg.resources : a.resources);
  auto data = experiments::load_datasets(cfg);

  std::vector<RevisionPair> training;
  if (experiments::uses_argrewrite(condition))
    training.insert(training.end(), data.argrewrite.begin(), data.argrewrite.end());
  if (auto mode = experiments::aesw_mode(condition)) {
    const auto& s = *mode == aesw::SampleMode::All ? data.aesw_all : data.aesw_plain;
    training.insert(training.end(), s.begin(), s.end());
  }
  auto set = experiments::analyze_labeled(training, *toolkit);
  std::vector<const features::PairAnalysis*> ptrs;
  for (const auto& an : set.analyses) ptrs.push_back(&an);
  experiments::TrainingTrace trace;
  auto bundle = experiments::train_bundle(ptrs, set.labels, cfg.training, cfg.seeds.model, 0, &trace);
  bundle.save_file(a.out);
  std::cout << ordered_json{{"model", a.out},
                            {"model_id", bundle.model_id()},
                            {"schema_version", bundle.schema.fingerprint()},
                            {"training_pairs", trace.training_pairs},
                            {"schema_width", trace.schema_width},
                            {"selected", trace.selected},
                            {"smote_fired", trace.smote_fired},
                            {"synthetic", trace.synthetic}}
                   .dump(2)
            << '\n';
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out,
                   const std::string& resources, int threads) {
  auto cfg = experiments::load_config(config_path);
  if (threads > 0) cfg.training.forest.threads = threads;
  auto toolkit = load_toolkit(resources.empty() && cfg.resources ? *cfg.resources : resources);
  auto result = experiments::run_experiment(cfg, *toolkit);
  experiments::write_run_dir(out, result);
  std::cout << experiments::render_report(result.baseline, result.conditions);
  return 0;
}

int cmd_report(const std::string& run, bool check) {
  auto report = experiments::replay_report(run);
  if (check) {
    std::ifstream in(fs::path(run) / "report.txt", std::ios::binary);
    std::ostringstream saved;
    saved << in.rdbuf();
    if (saved.str() != report) {
      std::cerr << "replayed report differs from report.txt\n";
      return 1;
    }
  }
  std::cout << report;
  return 0;
}

int cmd_predict(const std::string& model, const std::string& s1, const std::string& s2,
                const std::string& resources) {
  auto loaded = service::make_loaded_model(experiments::ModelBundle::load_file(model),
                                           load_toolkit(resources));
  try {
    std::cout << service::prediction_json(*loaded, s1, s2) << '\n';
  } catch (const service::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cmd_serve(const std::string& model, const std::string& bind, const std::string& cors,
              const std::string& resources) {
  service::ModelHost host;
  host.load_file(model, load_toolkit(resources));
  auto [addr, port] = service::parse_bind(bind);
  service::Server server(host, {cors});
  const int bound = server.bind(addr, port);
  if (bound < 0) throw ConfigurationError("cannot bind " + bind);
  std::cerr << "serving " << host.current()->bundle.model_id() << " on " << addr << ':' << bound
            << '\n';
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revjudge: judge whether a sentence revision improves on the original"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "parse a pair file and summarize it");
  std::string ingest_input, ingest_out;
  bool ingest_hashes = false, ingest_strict = false;
  ingest->add_option("--input", ingest_input)->required();
  ingest->add_option("--out", ingest_out, "write the accepted records as JSON lines");
  ingest->add_flag("--hashes", ingest_hashes, "print file and per-pair content hashes");
  ingest->add_flag("--strict", ingest_strict, "fail on the first rejected record");

  auto* agreement = app.add_subcommand("agreement", "Fleiss kappa over raw crowd labels");
  std::string agreement_input;
  std::size_t agreement_threshold = 5;
  agreement->add_option("--input", agreement_input)->required();
  agreement->add_option("--majority", agreement_threshold,
                        "also report items with at least this many agreeing votes (0: skip)");

  auto* extract = app.add_subcommand("aesw-extract", "sample and flip AESW pairs");
  ExtractArgs ea;
  extract->add_option("--input", ea.input)->required();
  extract->add_option("--mode", ea.mode)->check(CLI::IsMember({"all", "plaintext"}));
  extract->add_option("--n", ea.n);
  extract->add_option("--flip-prob", ea.flip_prob);
  extract->add_option("--seed", ea.seed);
  extract->add_option("--dev-fraction", ea.dev_fraction);
  extract->add_option("--out", ea.out)->required();
  extract->add_option("--dev-out", ea.dev_out);

  auto* train = app.add_subcommand("train", "train a model on a whole dataset");
  TrainArgs ta;
  train->add_option("--config", ta.config, "experiment config supplying data and parameters");
  train->add_option("--condition", ta.condition);
  train->add_option("--argrewrite", ta.argrewrite);
  train->add_option("--aesw-sample", ta.aesw_sample, "AESW export for AESW conditions");
  train->add_option("--seed", ta.seed, "model seed when no config is given");
  train->add_option("--resources", ta.resources);
  train->add_option("--out", ta.out)->required();

  auto* experiment = app.add_subcommand("experiment", "run the cross-validated comparison");
  std::string exp_config, exp_out, exp_resources;
  int exp_threads = 0;
  experiment->add_option("--config", exp_config)->required();
  experiment->add_option("--out", exp_out)->required();
  experiment->add_option("--resources", exp_resources);
  experiment->add_option("--threads", exp_threads, "forest training threads (0: all cores)");

  auto* report = app.add_subcommand("report", "regenerate a report from a run directory");
  std::string report_run;
  bool report_check = false;
  report->add_option("--run", report_run)->required();
  report->add_flag("--check", report_check, "fail unless it equals the saved report.txt");

  auto* predict = app.add_subcommand("predict", "score one sentence pair");
  std::string predict_model, predict_s1, predict_s2, predict_resources;
  predict->add_option("--model", predict_model)->required();
  predict->add_option("--s1", predict_s1)->required();
  predict->add_option("--s2", predict_s2)->required();
  predict->add_option("--resources", predict_resources);

  auto* serve = app.add_subcommand("serve", "serve a model over HTTP");
  std::string serve_model, serve_bind = "127.0.0.1:8080", serve_cors, serve_resources;
  serve->add_option("--model", serve_model)->required();
  serve->add_option("--bind", serve_bind);
  serve->add_option("--cors-origin", serve_cors);
  serve->add_option("--resources", serve_resources);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(ingest_input, ingest_hashes, ingest_strict, ingest_out);
    if (*agreement) return cmd_agreement(agreement_input, agreement_threshold);
    if (*extract) return cmd_aesw_extract(ea);
    if (*train) return cmd_train(ta);
    if (*experiment) return cmd_experiment(exp_config, exp_out, exp_resources, exp_threads);
    if (*report) return cmd_report(report_run, report_check);
    if (*predict) return cmd_predict(predict_model, predict_s1, predict_s2, predict_resources);
    if (*serve) return cmd_serve(serve_model, serve_bind, serve_cors, serve_resources);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << " (eligible: " << e.eligible() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
