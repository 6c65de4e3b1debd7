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

#ifndef REVJUDGE_TEXTMETRICS_CHECKER_H_
#define REVJUDGE_TEXTMETRICS_CHECKER_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "revjudge/textmetrics/lexicon.h"
#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

struct ErrorCounts {
  std::size_t spelling = 0;
  std::size_t grammar = 0;

  bool operator==(const ErrorCounts&) const = default;
};

class Dictionary {
 public:
  // One word per line, '#' comments; stored lowercased.
  static Dictionary load(const std::string& path);
  static Dictionary from_words(const std::vector<std::string>& words);
  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// One token-pattern rule. See data/resources/grammar_rules.tsv for the
// pattern syntax.
class GrammarRule {
 public:
  static GrammarRule parse(std::string id, std::string_view pattern,
                           std::string description);

  const std::string& id() const { return id_; }
  const std::string& description() const { return description_; }

  // Number of positions at which the rule fires. `tags` is parallel to the
  // tokens and may be empty when no rule uses {tag:...}.
  std::size_t count_matches(const TokenizedSentence& ts,
                            const std::vector<std::string>& tags) const;
  bool uses_tags() const { return uses_tags_; }

  struct Matcher {
    enum class Kind { Literal, Any, Gap, Word, Same, Lower, VowelSound, ConsonantSound, Tag };
    Kind kind = Kind::Any;
    std::vector<std::string> alternatives;  // Literal
    std::string tag;                        // Tag; trailing '*' = prefix match
  };

 private:
  bool match_from(const TokenizedSentence& ts, const std::vector<std::string>& tags,
                  std::size_t pos, std::size_t m) const;
  bool matches_token(const Matcher& m, const TokenizedSentence& ts,
                     const std::vector<std::string>& tags, std::size_t pos) const;

  std::string id_;
  std::string description_;
  std::vector<Matcher> matchers_;
  bool anchored_start_ = false;
  bool anchored_end_ = false;
  bool uses_tags_ = false;
  // @balance rules
  bool balance_ = false;
  std::string open_, close_;
};

std::vector<GrammarRule> load_grammar_rules(const std::string& path);

// Starts with a vowel sound: a/e/i/o/u minus "uni-", "use-", "eu-", "one"
// style exceptions, plus silent-h words ("hour", "honest", ...).
bool starts_with_vowel_sound(std::string_view lower_word);

// Spelling: alphabetic tokens absent from the dictionary, entity tokens
// exempt. Grammar: total rule firings.
class ErrorChecker {
 public:
  ErrorChecker(std::shared_ptr<const Dictionary> dictionary,
               std::vector<GrammarRule> rules,
               std::shared_ptr<const Lexicon> lexicon);

  ErrorCounts check(const TokenizedSentence& ts) const;
  // Rule ids that fired, one entry per firing.
  std::vector<std::string> fired_rules(const TokenizedSentence& ts) const;
  std::vector<std::string> misspellings(const TokenizedSentence& ts) const;

 private:
  std::shared_ptr<const Dictionary> dictionary_;
  std::vector<GrammarRule> rules_;
  std::shared_ptr<const Lexicon> lexicon_;
  CapitalizationEntityRecognizer entities_;
};

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_CHECKER_H_
