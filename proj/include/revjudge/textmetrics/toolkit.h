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

#ifndef REVJUDGE_TEXTMETRICS_TOOLKIT_H_
#define REVJUDGE_TEXTMETRICS_TOOLKIT_H_

#include <memory>
#include <optional>
#include <string>

#include "revjudge/textmetrics/checker.h"
#include "revjudge/textmetrics/lexicon.h"
#include "revjudge/textmetrics/specificity.h"
#include "revjudge/textmetrics/syntax.h"

namespace revjudge::text {

struct ResourcePaths {
  std::string dictionary;
  std::string grammar_rules;
  std::string lexicon;
  std::string subordinators;
  std::string specificity_weights;
  std::string word_frequencies;
  std::string connectives;
  // Precomputed parse statistics; heuristic syntax when unset.
  std::optional<std::string> syntax_sidecar;
  // With a sidecar, fall back to the heuristic for missing sentences.
  bool sidecar_fallback = true;

  // Standard file names under `dir`.
  static ResourcePaths in_directory(const std::string& dir);
};

// $REVJUDGE_RESOURCES if set, else the bundled data/resources directory.
std::string default_resource_dir();

// Every loaded scorer, immutable after construction and safe to share
// across threads.
class MetricsToolkit {
 public:
  static std::shared_ptr<const MetricsToolkit> load(const ResourcePaths& paths);
  static std::shared_ptr<const MetricsToolkit> load_default();

  const Lexicon& lexicon() const { return *lexicon_; }
  const EntityRecognizer& entities() const { return *entities_; }
  const ErrorChecker& checker() const { return *checker_; }
  const SpecificityModel& specificity() const { return *specificity_; }
  const SyntaxProvider& syntax() const { return *syntax_; }

  std::string tokenizer_version() const { return std::string(kTokenizerVersion); }
  // Tokenizer version plus a hash of every resource file's contents.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  MetricsToolkit() = default;

  std::shared_ptr<const Lexicon> lexicon_;
  std::unique_ptr<EntityRecognizer> entities_;
  std::unique_ptr<ErrorChecker> checker_;
  std::unique_ptr<SpecificityModel> specificity_;
  std::shared_ptr<const SyntaxProvider> syntax_;
  std::string fingerprint_;
};

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_TOOLKIT_H_
