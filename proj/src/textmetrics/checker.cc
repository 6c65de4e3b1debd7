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

#include "revjudge/textmetrics/checker.h"

#include <cctype>
#include <fstream>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

namespace revjudge::text {

Dictionary Dictionary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open dictionary '" + path + "'");
  Dictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = trim(line);
    if (word.empty() || word[0] == '#') continue;
    dict.words_.insert(to_lower(word));
  }
  return dict;
}

Dictionary Dictionary::from_words(const std::vector<std::string>& words) {
  Dictionary dict;
  for (const auto& w : words) dict.words_.insert(to_lower(w));
  return dict;
}

bool Dictionary::contains(std::string_view word) const {
  return words_.count(to_lower(word)) > 0;
}

bool starts_with_vowel_sound(std::string_view w) {
  if (w.empty() || !std::isalpha(static_cast<unsigned char>(w[0]))) return false;
  auto starts = [&](std::string_view p) { return w.substr(0, p.size()) == p; };
  for (std::string_view p : {"hour", "honest", "honor", "honour", "heir"})
    if (starts(p)) return true;
  for (std::string_view p : {"uni", "use", "usu", "uti", "ura", "ure", "eu", "ewe", "one", "once", "ubiq"})
    if (starts(p)) return false;
  return std::string_view("aeiou").find(w[0]) != std::string_view::npos;
}

GrammarRule GrammarRule::parse(std::string id, std::string_view pattern,
                               std::string description) {
  GrammarRule rule;
  rule.id_ = std::move(id);
  rule.description_ = std::move(description);
  std::vector<std::string> parts;
  for (auto& p : split(collapse_whitespace(pattern), ' '))
    if (!p.empty()) parts.push_back(p);
  if (parts.empty()) throw ConfigurationError("grammar rule '" + rule.id_ + "' is empty");

  if (parts[0] == "@balance") {
    if (parts.size() != 3)
      throw ConfigurationError("grammar rule '" + rule.id_ + "': @balance needs two delimiters");
    rule.balance_ = true;
    rule.open_ = parts[1];
    rule.close_ = parts[2];
    return rule;
  }
  std::size_t begin = 0, end = parts.size();
  if (parts.front() == "^") {
    rule.anchored_start_ = true;
    ++begin;
  }
  if (end > begin && parts.back() == "$") {
    rule.anchored_end_ = true;
    --end;
  }
  using Kind = Matcher::Kind;
  for (std::size_t i = begin; i < end; ++i) {
    const std::string& p = parts[i];
    Matcher m;
    if (p == "*") {
      m.kind = Kind::Any;
    } else if (p == "**") {
      m.kind = Kind::Gap;
    } else if (p == "{word}") {
      m.kind = Kind::Word;
    } else if (p == "{same}") {
      m.kind = Kind::Same;
    } else if (p == "{lower}") {
      m.kind = Kind::Lower;
    } else if (p == "{vowel-sound}") {
      m.kind = Kind::VowelSound;
    } else if (p == "{consonant-sound}") {
      m.kind = Kind::ConsonantSound;
    } else if (p.rfind("{tag:", 0) == 0 && p.back() == '}') {
      m.kind = Kind::Tag;
      m.tag = p.substr(5, p.size() - 6);
      rule.uses_tags_ = true;
    } else if (p.front() == '{') {
      throw ConfigurationError("grammar rule '" + rule.id_ + "': unknown matcher " + p);
    } else {
      m.kind = Kind::Literal;
      m.alternatives = split(to_lower(p), '|');
    }
    rule.matchers_.push_back(std::move(m));
  }
  if (rule.matchers_.empty())
    throw ConfigurationError("grammar rule '" + rule.id_ + "' has no matchers");
  return rule;
}

bool GrammarRule::matches_token(const Matcher& m, const TokenizedSentence& ts,
                                const std::vector<std::string>& tags,
                                std::size_t pos) const {
  const std::string& tok = ts.tokens[pos];
  const std::string& lower = ts.lower_tokens[pos];
  using Kind = Matcher::Kind;
  switch (m.kind) {
    case Kind::Any:
      return true;
    case Kind::Gap:
      return true;
    case Kind::Literal:
      for (const auto& alt : m.alternatives)
        if (alt == lower) return true;
      return false;
    case Kind::Word:
      return is_alphabetic(tok);
    case Kind::Same:
      return pos > 0 && is_alphabetic(tok) && lower == ts.lower_tokens[pos - 1];
    case Kind::Lower:
      return !tok.empty() && std::islower(static_cast<unsigned char>(tok[0]));
    case Kind::VowelSound:
      return is_alphabetic(tok) && starts_with_vowel_sound(lower);
    case Kind::ConsonantSound:
      return is_alphabetic(tok) && !starts_with_vowel_sound(lower);
    case Kind::Tag: {
      if (pos >= tags.size()) return false;
      if (!m.tag.empty() && m.tag.back() == '*')
        return tags[pos].rfind(m.tag.substr(0, m.tag.size() - 1), 0) == 0;
      return tags[pos] == m.tag;
    }
  }
  return false;
}

bool GrammarRule::match_from(const TokenizedSentence& ts,
                             const std::vector<std::string>& tags, std::size_t pos,
                             std::size_t m) const {
  if (m == matchers_.size()) return !anchored_end_ || pos == ts.size();
  if (matchers_[m].kind == Matcher::Kind::Gap) {
    for (std::size_t k = pos; k <= ts.size(); ++k)
      if (match_from(ts, tags, k, m + 1)) return true;
    return false;
  }
  if (pos >= ts.size() || !matches_token(matchers_[m], ts, tags, pos)) return false;
  return match_from(ts, tags, pos + 1, m + 1);
}

std::size_t GrammarRule::count_matches(const TokenizedSentence& ts,
                                       const std::vector<std::string>& tags) const {
  if (balance_) {
    if (open_ == close_) {
      std::size_t n = 0;
      for (const auto& t : ts.tokens) n += t == open_;
      return n % 2;
    }
    std::size_t depth = 0, stray = 0;
    for (const auto& t : ts.tokens) {
      if (t == open_) {
        ++depth;
      } else if (t == close_) {
        if (depth)
          --depth;
        else
          ++stray;
      }
    }
    return depth + stray;
  }
  if (anchored_start_) return match_from(ts, tags, 0, 0) ? 1 : 0;
  std::size_t count = 0;
  for (std::size_t start = 0; start < ts.size(); ++start)
    count += match_from(ts, tags, start, 0);
  return count;
}

std::vector<GrammarRule> load_grammar_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open grammar rules '" + path + "'");
  std::vector<GrammarRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || line[0] == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 2)
      throw ConfigurationError(path + ":" + std::to_string(line_no) +
                               ": expected <id>\\t<pattern>\\t<description>");
    rules.push_back(GrammarRule::parse(trim(cols[0]), cols[1],
                                       cols.size() > 2 ? trim(cols[2]) : ""));
  }
  return rules;
}

namespace {
std::shared_ptr<const Lexicon> require_lexicon(std::shared_ptr<const Lexicon> lexicon) {
  if (!lexicon) throw ConfigurationError("error checker needs a lexicon");
  return lexicon;
}
}  // namespace

ErrorChecker::ErrorChecker(std::shared_ptr<const Dictionary> dictionary,
                           std::vector<GrammarRule> rules,
                           std::shared_ptr<const Lexicon> lexicon)
    : dictionary_(std::move(dictionary)),
      rules_(std::move(rules)),
      lexicon_(require_lexicon(std::move(lexicon))),
      entities_(*lexicon_) {
  if (!dictionary_) throw ConfigurationError("error checker needs a dictionary");
}

std::vector<std::string> ErrorChecker::misspellings(const TokenizedSentence& ts) const {
  std::vector<std::string> out;
  const std::vector<bool> entity = entities_.mark(ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (entity[i] || !is_alphabetic(ts.tokens[i])) continue;
    if (!dictionary_->contains(ts.lower_tokens[i])) out.push_back(ts.tokens[i]);
  }
  return out;
}

std::vector<std::string> ErrorChecker::fired_rules(const TokenizedSentence& ts) const {
  std::vector<std::string> tags;
  for (const auto& rule : rules_) {
    if (rule.uses_tags()) {
      tags = lexicon_->tag(ts);
      break;
    }
  }
  std::vector<std::string> fired;
  for (const auto& rule : rules_) {
    const std::size_t n = rule.count_matches(ts, tags);
    for (std::size_t k = 0; k < n; ++k) fired.push_back(rule.id());
  }
  return fired;
}

ErrorCounts ErrorChecker::check(const TokenizedSentence& ts) const {
  return {misspellings(ts).size(), fired_rules(ts).size()};
}

}  // namespace revjudge::text
