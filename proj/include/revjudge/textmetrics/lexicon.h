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

#ifndef REVJUDGE_TEXTMETRICS_LEXICON_H_
#define REVJUDGE_TEXTMETRICS_LEXICON_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

// Word -> most frequent Penn Treebank tag. Immutable after load.
class Lexicon {
 public:
  // File format: "<word>\t<tag>" per line, '#' comments. Throws
  // ConfigurationError if the file cannot be opened.
  static Lexicon load(const std::string& path);
  static Lexicon from_entries(std::vector<std::pair<std::string, std::string>> entries);

  // Exact-case lookup, then lowercase.
  std::optional<std::string_view> lookup(std::string_view word) const;
  bool contains_lowercase(std::string_view word) const;
  std::size_t size() const { return tags_.size(); }

  // Lexicon lookup with suffix and shape guesses for unknown words plus a
  // couple of contextual fixes (determiner + verb -> noun, to/modal + noun
  // -> verb). Punctuation tokens tag as themselves.
  std::vector<std::string> tag(const TokenizedSentence& ts) const;

 private:
  std::unordered_map<std::string, std::string> tags_;
};

// Capitalization heuristic for named entities: an alphabetic token starting
// with an uppercase letter is an entity unless it is the pronoun "I" or it
// opens the sentence and its lowercase form is an ordinary lexicon word.
class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  virtual std::vector<bool> mark(const TokenizedSentence& ts) const = 0;
};

class CapitalizationEntityRecognizer : public EntityRecognizer {
 public:
  explicit CapitalizationEntityRecognizer(const Lexicon& lexicon)
      : lexicon_(lexicon) {}
  std::vector<bool> mark(const TokenizedSentence& ts) const override;

 private:
  const Lexicon& lexicon_;
};

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_LEXICON_H_
