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

#include "revjudge/experiments/config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "revjudge/common/error.h"

namespace revjudge::experiments {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ConditionEntry {
  Condition condition;
  std::string_view name;
};

constexpr ConditionEntry kConditions[] = {
    {Condition::ArgRewriteOnly, "argrewrite"},
    {Condition::AeswAllOnly, "aesw-all"},
    {Condition::AeswPlainOnly, "aesw-plain"},
    {Condition::ArgRewritePlusAeswAll, "argrewrite+aesw-all"},
    {Condition::ArgRewritePlusAeswPlain, "argrewrite+aesw-plain"},
};

void check_keys(const json& object, std::string_view section,
                std::initializer_list<std::string_view> allowed) {
  if (!object.is_object())
    throw ConfigurationError("config section '" + std::string(section) + "' must be an object");
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto name : allowed) known = known || key == name;
    if (!known)
      throw ConfigurationError("unknown config key '" + std::string(section) +
                               (section.empty() ? "" : ".") + key + "'");
  }
}

template <typename T>
void read(const json& object, const char* key, T& out) {
  if (!object.contains(key)) return;
  try {
    out = object.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigurationError(std::string("config key '") + key + "' has the wrong type");
  }
}

std::string resolve(const std::string& base, const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) p = fs::path(base) / p;
  return p.lexically_normal().string();
}

void read_path(const json& object, const char* key, const std::string& base,
               std::optional<std::string>& out) {
  std::string value;
  if (!object.contains(key) || object.at(key).is_null()) return;
  read(object, key, value);
  out = resolve(base, value);
}

json optional_json(const std::optional<std::string>& value) {
  return value ? json(*value) : json(nullptr);
}

}  // namespace

std::string_view condition_name(Condition condition) {
  for (const auto& entry : kConditions)
    if (entry.condition == condition) return entry.name;
  return "?";
}

Condition parse_condition(std::string_view name) {
  for (const auto& entry : kConditions)
    if (entry.name == name) return entry.condition;
  throw ConfigurationError("unknown condition '" + std::string(name) + "'");
}

const std::vector<Condition>& all_conditions() {
  static const std::vector<Condition> all = [] {
    std::vector<Condition> out;
    for (const auto& entry : kConditions) out.push_back(entry.condition);
    return out;
  }();
  return all;
}

bool uses_argrewrite(Condition condition) {
  return condition == Condition::ArgRewriteOnly ||
         condition == Condition::ArgRewritePlusAeswAll ||
         condition == Condition::ArgRewritePlusAeswPlain;
}

std::optional<aesw::SampleMode> aesw_mode(Condition condition) {
  switch (condition) {
    case Condition::AeswAllOnly:
    case Condition::ArgRewritePlusAeswAll:
      return aesw::SampleMode::All;
    case Condition::AeswPlainOnly:
    case Condition::ArgRewritePlusAeswPlain:
      return aesw::SampleMode::Plaintext;
    case Condition::ArgRewriteOnly:
      break;
  }
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  if (argrewrite.empty()) throw ConfigurationError("config needs data.argrewrite");
  if (conditions.empty()) throw ConfigurationError("config lists no conditions");
  if (k < 2) throw ConfigurationError("folds.k must be at least 2");
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0))
    throw ConfigurationError("aesw_sample.flip_prob must be in [0, 1]");
  if (!(dev_fraction >= 0.0 && dev_fraction < 1.0))
    throw ConfigurationError("aesw_sample.dev_fraction must be in [0, 1)");
  if (!(training.smote_tolerance >= 0.5 && training.smote_tolerance <= 1.0))
    throw ConfigurationError("smote.tolerance must be in [0.5, 1]");
  for (Condition c : conditions) {
    auto mode = aesw_mode(c);
    if (!mode) continue;
    const auto& sample = *mode == aesw::SampleMode::All ? aesw_all_sample : aesw_plain_sample;
    if (!sample && !aesw_sgml)
      throw ConfigurationError("condition '" + std::string(condition_name(c)) +
                               "' needs an AESW sample or data.aesw_sgml");
  }
  if (tuning.enabled && !aesw_dev && !aesw_sgml)
    throw ConfigurationError("tuning needs data.aesw_dev or data.aesw_sgml");
  if (tuning.enabled && tuning.folds < 2)
    throw ConfigurationError("tuning.folds must be at least 2");
}

ExperimentConfig parse_config(std::string_view json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "", {"conditions", "data", "aesw_sample", "folds", "seeds", "features",
                        "smote", "forest", "tuning", "resources"});
  ExperimentConfig cfg;

  if (root.contains("conditions")) {
    std::vector<std::string> names;
    read(root, "conditions", names);
    cfg.conditions.clear();
    for (const auto& name : names) cfg.conditions.push_back(parse_condition(name));
  }
  if (root.contains("data")) {
    const json& data = root["data"];
    check_keys(data, "data", {"argrewrite", "aesw_sgml", "aesw_all_sample", "aesw_plain_sample",
                              "aesw_dev", "fold_plan"});
    std::optional<std::string> argrewrite;
    read_path(data, "argrewrite", base_dir, argrewrite);
    if (argrewrite) cfg.argrewrite = *argrewrite;
    read_path(data, "aesw_sgml", base_dir, cfg.aesw_sgml);
    read_path(data, "aesw_all_sample", base_dir, cfg.aesw_all_sample);
    read_path(data, "aesw_plain_sample", base_dir, cfg.aesw_plain_sample);
    read_path(data, "aesw_dev", base_dir, cfg.aesw_dev);
    read_path(data, "fold_plan", base_dir, cfg.fold_plan);
  }
  if (root.contains("resources")) read_path(root, "resources", base_dir, cfg.resources);
  if (root.contains("aesw_sample")) {
    const json& s = root["aesw_sample"];
    check_keys(s, "aesw_sample", {"n", "flip_prob", "dev_fraction"});
    read(s, "n", cfg.aesw_n);
    read(s, "flip_prob", cfg.flip_prob);
    read(s, "dev_fraction", cfg.dev_fraction);
  }
  if (root.contains("folds")) {
    const json& f = root["folds"];
    check_keys(f, "folds", {"k", "stratified"});
    read(f, "k", cfg.k);
    read(f, "stratified", cfg.stratified);
  }
  if (root.contains("seeds")) {
    const json& s = root["seeds"];
    check_keys(s, "seeds", {"folds", "sample", "flip", "model", "dev"});
    read(s, "folds", cfg.seeds.folds);
    read(s, "sample", cfg.seeds.sample);
    read(s, "flip", cfg.seeds.flip);
    read(s, "model", cfg.seeds.model);
    read(s, "dev", cfg.seeds.dev);
  }
  if (root.contains("features")) {
    const json& f = root["features"];
    check_keys(f, "features", {"min_df", "top_k"});
    read(f, "min_df", cfg.training.min_df);
    read(f, "top_k", cfg.training.top_k);
  }
  if (root.contains("smote")) {
    const json& s = root["smote"];
    check_keys(s, "smote", {"k", "tolerance"});
    read(s, "k", cfg.training.smote_k);
    read(s, "tolerance", cfg.training.smote_tolerance);
  }
  if (root.contains("forest")) {
    const json& f = root["forest"];
    check_keys(f, "forest", {"n_trees", "max_features", "max_depth", "min_samples_leaf",
                             "bootstrap", "max_bins", "threads"});
    auto& p = cfg.training.forest;
    read(f, "n_trees", p.n_trees);
    read(f, "max_features", p.max_features);
    read(f, "max_depth", p.max_depth);
    read(f, "min_samples_leaf", p.min_samples_leaf);
    read(f, "bootstrap", p.bootstrap);
    read(f, "max_bins", p.max_bins);
    read(f, "threads", p.threads);
  }
  if (root.contains("tuning")) {
    const json& t = root["tuning"];
    check_keys(t, "tuning", {"enabled", "folds", "grid"});
    read(t, "enabled", cfg.tuning.enabled);
    read(t, "folds", cfg.tuning.folds);
    if (t.contains("grid")) {
      const json& g = t["grid"];
      check_keys(g, "tuning.grid", {"n_trees", "max_features", "max_depth", "min_samples_leaf"});
      read(g, "n_trees", cfg.tuning.grid.n_trees);
      read(g, "max_features", cfg.tuning.grid.max_features);
      read(g, "max_depth", cfg.tuning.grid.max_depth);
      read(g, "min_samples_leaf", cfg.tuning.grid.min_samples_leaf);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  fs::path base = fs::absolute(fs::path(path)).parent_path();
  return parse_config(text.str(), base.string());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json conditions = json::array();
  for (Condition c : cfg.conditions) conditions.push_back(std::string(condition_name(c)));
  const auto& p = cfg.training.forest;
  json root = {
      {"conditions", conditions},
      {"data",
       {{"argrewrite", cfg.argrewrite},
        {"aesw_sgml", optional_json(cfg.aesw_sgml)},
        {"aesw_all_sample", optional_json(cfg.aesw_all_sample)},
        {"aesw_plain_sample", optional_json(cfg.aesw_plain_sample)},
        {"aesw_dev", optional_json(cfg.aesw_dev)},
        {"fold_plan", optional_json(cfg.fold_plan)}}},
      {"resources", optional_json(cfg.resources)},
      {"aesw_sample",
       {{"n", cfg.aesw_n}, {"flip_prob", cfg.flip_prob}, {"dev_fraction", cfg.dev_fraction}}},
      {"folds", {{"k", cfg.k}, {"stratified", cfg.stratified}}},
      {"seeds",
       {{"folds", cfg.seeds.folds},
        {"sample", cfg.seeds.sample},
        {"flip", cfg.seeds.flip},
        {"model", cfg.seeds.model},
        {"dev", cfg.seeds.dev}}},
      {"features", {{"min_df", cfg.training.min_df}, {"top_k", cfg.training.top_k}}},
      {"smote", {{"k", cfg.training.smote_k}, {"tolerance", cfg.training.smote_tolerance}}},
      {"forest",
       {{"n_trees", p.n_trees},
        {"max_features", p.max_features},
        {"max_depth", p.max_depth},
        {"min_samples_leaf", p.min_samples_leaf},
        {"bootstrap", p.bootstrap},
        {"max_bins", p.max_bins}}},
      {"tuning",
       {{"enabled", cfg.tuning.enabled},
        {"folds", cfg.tuning.folds},
        {"grid",
         {{"n_trees", cfg.tuning.grid.n_trees},
          {"max_features", cfg.tuning.grid.max_features},
          {"max_depth", cfg.tuning.grid.max_depth},
          {"min_samples_leaf", cfg.tuning.grid.min_samples_leaf}}}}},
  };
  return root.dump(2);
}

}  // namespace revjudge::experiments
