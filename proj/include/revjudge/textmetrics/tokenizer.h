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

#ifndef REVJUDGE_TEXTMETRICS_TOKENIZER_H_
#define REVJUDGE_TEXTMETRICS_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace revjudge::text {

// Bump whenever tokenize() output can change. Schema fingerprints and
// syntax sidecar keys include it.
inline constexpr std::string_view kTokenizerVersion = "rj-tok-1";

struct TokenizedSentence {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<std::string> lower_tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

// Whitespace split, then leading and trailing punctuation is peeled into
// standalone tokens. Interior apostrophes, hyphens, colons and periods stay
// attached ("can't", "well-known", "4:30pm"). A run of periods is one token.
TokenizedSentence tokenize(std::string_view text);

bool is_alphabetic(std::string_view token);
bool has_alnum(std::string_view token);
bool has_digit(std::string_view token);
bool is_capitalized(std::string_view token);

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_TOKENIZER_H_
