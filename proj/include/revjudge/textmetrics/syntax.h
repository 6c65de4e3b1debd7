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

#ifndef REVJUDGE_TEXTMETRICS_SYNTAX_H_
#define REVJUDGE_TEXTMETRICS_SYNTAX_H_

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "revjudge/textmetrics/lexicon.h"
#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

enum class SyntaxSource { Heuristic, Precomputed };

struct SyntaxStats {
  std::size_t sbar_count = 0;
  std::size_t vp_count = 0;
  std::size_t np_count = 0;
  std::size_t tree_height = 0;
  SyntaxSource provider = SyntaxSource::Heuristic;

  bool operator==(const SyntaxStats&) const = default;
};

// Sidecar key: FNV-1a of the tokenizer version and the space-joined tokens.
std::string sentence_hash(const TokenizedSentence& ts);

class SyntaxProvider {
 public:
  virtual ~SyntaxProvider() = default;
  virtual SyntaxStats stats(const TokenizedSentence& ts) const = 0;
};

// Lexicon tagger plus a rule chunker:
//   sbar  subordinator-lexicon hits, plus "that" right after a verb
//   np    maximal determiner/adjective/number/noun runs containing a head
//         noun, pronoun or number
//   vp    one per verb or modal token (auxiliary chains nest VPs)
//   height 1 + clause depth, clause depth = 1 + sbar (0 for empty input)
class HeuristicSyntax : public SyntaxProvider {
 public:
  HeuristicSyntax(std::shared_ptr<const Lexicon> lexicon,
                  std::unordered_set<std::string> subordinators);
  static std::unordered_set<std::string> load_subordinators(const std::string& path);

  SyntaxStats stats(const TokenizedSentence& ts) const override;

 private:
  std::shared_ptr<const Lexicon> lexicon_;
  std::unordered_set<std::string> subordinators_;
};

// Exact statistics computed offline by an external constituency parser,
// read from "<sentence_hash>\t<sbar>\t<vp>\t<np>\t<height>" lines. A miss
// throws LookupError unless a fallback provider was given.
class PrecomputedSyntax : public SyntaxProvider {
 public:
  static PrecomputedSyntax load(const std::string& sidecar_path,
                                std::shared_ptr<const SyntaxProvider> fallback = nullptr);
  PrecomputedSyntax(std::unordered_map<std::string, SyntaxStats> table,
                    std::shared_ptr<const SyntaxProvider> fallback);

  SyntaxStats stats(const TokenizedSentence& ts) const override;
  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, SyntaxStats> table_;
  std::shared_ptr<const SyntaxProvider> fallback_;
};

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_SYNTAX_H_
