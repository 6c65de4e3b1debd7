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

#include "revjudge/textmetrics/syntax.h"

#include <fstream>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

namespace revjudge::text {
namespace {

bool starts_with(const std::string& s, std::string_view p) { return s.rfind(p, 0) == 0; }

bool is_verb(const std::string& tag) { return starts_with(tag, "VB") || tag == "MD"; }

bool is_np_head(const std::string& tag) {
  return starts_with(tag, "NN") || tag == "PRP" || tag == "CD" || tag == "EX" ||
         tag == "WP";
}

bool is_np_modifier(const std::string& tag) {
  return tag == "DT" || tag == "PDT" || tag == "PRP$" || tag == "POS" ||
         starts_with(tag, "JJ") || tag == "CD";
}

}  // namespace

std::string sentence_hash(const TokenizedSentence& ts) {
  std::string key(kTokenizerVersion);
  key.push_back('\x1f');
  key += join(ts.tokens, " ");
  return to_hex(fnv1a64(key));
}

HeuristicSyntax::HeuristicSyntax(std::shared_ptr<const Lexicon> lexicon,
                                 std::unordered_set<std::string> subordinators)
    : lexicon_(std::move(lexicon)), subordinators_(std::move(subordinators)) {
  if (!lexicon_) throw ConfigurationError("heuristic syntax needs a lexicon");
}

std::unordered_set<std::string> HeuristicSyntax::load_subordinators(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open subordinator lexicon '" + path + "'");
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = trim(line);
    if (!word.empty() && word[0] != '#') out.insert(to_lower(word));
  }
  return out;
}

SyntaxStats HeuristicSyntax::stats(const TokenizedSentence& ts) const {
  SyntaxStats s;
  s.provider = SyntaxSource::Heuristic;
  if (ts.empty()) return s;
  const std::vector<std::string> tags = lexicon_->tag(ts);

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string& w = ts.lower_tokens[i];
    if (subordinators_.count(w)) ++s.sbar_count;
    else if (w == "that" && i > 0 && is_verb(tags[i - 1])) ++s.sbar_count;
    if (is_verb(tags[i])) ++s.vp_count;
  }

  bool in_np = false, has_head = false;
  for (std::size_t i = 0; i <= tags.size(); ++i) {
    const bool head = i < tags.size() && is_np_head(tags[i]);
    const bool mod = i < tags.size() && is_np_modifier(tags[i]);
    if (head || mod) {
      // A new determiner after a head starts a new phrase.
      if (in_np && has_head && (tags[i] == "DT" || tags[i] == "PRP$" || tags[i] == "PRP")) {
        ++s.np_count;
        has_head = false;
      }
      in_np = true;
      has_head = has_head || head;
    } else {
      if (in_np && has_head) ++s.np_count;
      in_np = false;
      has_head = false;
    }
  }
  s.tree_height = 1 + (1 + s.sbar_count);
  return s;
}

PrecomputedSyntax::PrecomputedSyntax(std::unordered_map<std::string, SyntaxStats> table,
                                     std::shared_ptr<const SyntaxProvider> fallback)
    : table_(std::move(table)), fallback_(std::move(fallback)) {}

PrecomputedSyntax PrecomputedSyntax::load(const std::string& sidecar_path,
                                          std::shared_ptr<const SyntaxProvider> fallback) {
  std::ifstream in(sidecar_path);
  if (!in) throw ConfigurationError("cannot open syntax sidecar '" + sidecar_path + "'");
  std::unordered_map<std::string, SyntaxStats> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    auto cols = split(trim(line), '\t');
    if (cols.size() != 5)
      throw ParseError("syntax sidecar needs 5 tab-separated columns", line_no);
    SyntaxStats s;
    for (std::size_t k = 1; k < cols.size(); ++k)
      if (cols[k].empty() || cols[k][0] == '-')
        throw ParseError("syntax sidecar counts must be non-negative integers", line_no);
    try {
      s.sbar_count = std::stoul(cols[1]);
      s.vp_count = std::stoul(cols[2]);
      s.np_count = std::stoul(cols[3]);
      s.tree_height = std::stoul(cols[4]);
    } catch (const std::exception&) {
      throw ParseError("syntax sidecar counts must be non-negative integers", line_no);
    }
    s.provider = SyntaxSource::Precomputed;
    table[cols[0]] = s;
  }
  return PrecomputedSyntax(std::move(table), std::move(fallback));
}

SyntaxStats PrecomputedSyntax::stats(const TokenizedSentence& ts) const {
  const std::string key = sentence_hash(ts);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  if (fallback_) return fallback_->stats(ts);
  throw LookupError("no precomputed syntax for sentence " + key + ": " + ts.raw);
}

}  // namespace revjudge::text
