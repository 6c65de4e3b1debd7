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

#include "revjudge/textmetrics/lexicon.h"

#include <fstream>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

namespace revjudge::text {
namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string guess_tag(std::string_view token, std::string_view lower, bool initial) {
  if (has_digit(token)) return "CD";
  if (!has_alnum(token)) return std::string(token);
  if (!initial && is_capitalized(token)) return "NNP";
  if (ends_with(lower, "ly")) return "RB";
  if (ends_with(lower, "ing")) return "VBG";
  if (ends_with(lower, "ed")) return "VBN";
  for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "al", "ic", "less"})
    if (ends_with(lower, s)) return "JJ";
  if (ends_with(lower, "ss")) return "NN";
  if (ends_with(lower, "s")) return "NNS";
  return "NN";
}

}  // namespace

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open lexicon '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    entries.emplace_back(line.substr(0, tab), trim(line.substr(tab + 1)));
  }
  return from_entries(std::move(entries));
}

Lexicon Lexicon::from_entries(std::vector<std::pair<std::string, std::string>> entries) {
  Lexicon lex;
  lex.tags_.reserve(entries.size());
  for (auto& [word, tag] : entries) lex.tags_.emplace(std::move(word), std::move(tag));
  return lex;
}

std::optional<std::string_view> Lexicon::lookup(std::string_view word) const {
  if (auto it = tags_.find(std::string(word)); it != tags_.end()) return it->second;
  if (auto it = tags_.find(to_lower(word)); it != tags_.end()) return it->second;
  return std::nullopt;
}

bool Lexicon::contains_lowercase(std::string_view word) const {
  return tags_.count(to_lower(word)) > 0;
}

std::vector<std::string> Lexicon::tag(const TokenizedSentence& ts) const {
  std::vector<std::string> tags;
  tags.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& tok = ts.tokens[i];
    const bool initial = i == 0;
    std::optional<std::string_view> known;
    if (!initial && is_capitalized(tok) && tok != "I") {
      // Mid-sentence capitals are proper nouns unless the exact form is listed.
      auto it = tags_.find(tok);
      if (it != tags_.end()) known = it->second;
    } else {
      known = lookup(tok);
    }
    tags.push_back(known ? std::string(*known) : guess_tag(tok, ts.lower_tokens[i], initial));
  }
  for (std::size_t i = 1; i < tags.size(); ++i) {
    const std::string& prev = tags[i - 1];
    if ((prev == "DT" || prev == "PRP$" || prev == "JJ") && tags[i] == "VB") tags[i] = "NN";
    if ((prev == "TO" || prev == "MD") && tags[i] == "NN") tags[i] = "VB";
  }
  return tags;
}

std::vector<bool> CapitalizationEntityRecognizer::mark(const TokenizedSentence& ts) const {
  std::vector<bool> out(ts.size(), false);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& tok = ts.tokens[i];
    if (!is_alphabetic(tok) || !is_capitalized(tok) || tok == "I") continue;
    const bool initial =
        i == 0 || (i == 1 && (ts.tokens[0] == "\"" || ts.tokens[0] == "(" ||
                              ts.tokens[0] == "'"));
    out[i] = !initial || !lexicon_.contains_lowercase(tok);
  }
  return out;
}

}  // namespace revjudge::text
