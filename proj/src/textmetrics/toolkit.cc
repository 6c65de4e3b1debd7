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

#include "revjudge/textmetrics/toolkit.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

#ifndef REVJUDGE_DATA_DIR
#define REVJUDGE_DATA_DIR "data"
#endif

namespace revjudge::text {
namespace {

std::uint64_t file_hash(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open resource '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a64(buf.str(), seed);
}

}  // namespace

ResourcePaths ResourcePaths::in_directory(const std::string& dir) {
  ResourcePaths p;
  p.dictionary = dir + "/dictionary.txt";
  p.grammar_rules = dir + "/grammar_rules.tsv";
  p.lexicon = dir + "/pos_lexicon.tsv";
  p.subordinators = dir + "/subordinators.txt";
  p.specificity_weights = dir + "/specificity_weights.txt";
  p.word_frequencies = dir + "/word_freq.tsv";
  p.connectives = dir + "/connectives.txt";
  return p;
}

std::string default_resource_dir() {
  if (const char* env = std::getenv("REVJUDGE_RESOURCES"); env && *env) return env;
  return std::string(REVJUDGE_DATA_DIR) + "/resources";
}

std::shared_ptr<const MetricsToolkit> MetricsToolkit::load(const ResourcePaths& paths) {
  std::shared_ptr<MetricsToolkit> kit(new MetricsToolkit());
  kit->lexicon_ = std::make_shared<const Lexicon>(Lexicon::load(paths.lexicon));
  kit->entities_ = std::make_unique<CapitalizationEntityRecognizer>(*kit->lexicon_);
  auto dictionary = std::make_shared<const Dictionary>(Dictionary::load(paths.dictionary));
  kit->checker_ = std::make_unique<ErrorChecker>(
      dictionary, load_grammar_rules(paths.grammar_rules), kit->lexicon_);
  kit->specificity_ = std::make_unique<SpecificityModel>(SpecificityModel::load(
      paths.specificity_weights, paths.word_frequencies, paths.connectives));
  auto heuristic = std::make_shared<const HeuristicSyntax>(
      kit->lexicon_, HeuristicSyntax::load_subordinators(paths.subordinators));
  if (paths.syntax_sidecar) {
    kit->syntax_ = std::make_shared<const PrecomputedSyntax>(PrecomputedSyntax::load(
        *paths.syntax_sidecar, paths.sidecar_fallback ? heuristic : nullptr));
  } else {
    kit->syntax_ = heuristic;
  }

  std::uint64_t h = fnv1a64(kTokenizerVersion);
  for (const std::string* p : {&paths.dictionary, &paths.grammar_rules, &paths.lexicon,
                               &paths.subordinators, &paths.specificity_weights,
                               &paths.word_frequencies, &paths.connectives})
    h = file_hash(*p, h);
  if (paths.syntax_sidecar) h = file_hash(*paths.syntax_sidecar, h);
  kit->fingerprint_ = std::string(kTokenizerVersion) + ":" + to_hex(h);
  return kit;
}

std::shared_ptr<const MetricsToolkit> MetricsToolkit::load_default() {
  return load(ResourcePaths::in_directory(default_resource_dir()));
}

}  // namespace revjudge::text
