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

#include "revjudge/textmetrics/tokenizer.h"

#include <cctype>

#include "revjudge/common/util.h"

namespace revjudge::text {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

// Bytes >= 0x80 belong to multi-byte UTF-8 sequences and are treated as
// word characters.
bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u);
}

void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t b = 0, e = chunk.size();
  std::vector<std::string> trailing;
  while (b < e && !is_word_char(chunk[b])) {
    if (chunk[b] == '.') {
      std::size_t j = b;
      while (j < e && chunk[j] == '.') ++j;
      out.emplace_back(chunk.substr(b, j - b));
      b = j;
    } else {
      out.emplace_back(1, chunk[b++]);
    }
  }
  while (e > b && !is_word_char(chunk[e - 1])) {
    if (chunk[e - 1] == '.') {
      std::size_t j = e;
      while (j > b && chunk[j - 1] == '.') --j;
      trailing.emplace_back(chunk.substr(j, e - j));
      e = j;
    } else {
      trailing.emplace_back(1, chunk[--e]);
    }
  }
  if (e > b) out.emplace_back(chunk.substr(b, e - b));
  for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(*it);
}

}  // namespace

TokenizedSentence tokenize(std::string_view text) {
  TokenizedSentence ts;
  ts.raw = std::string(text);
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) split_chunk(text.substr(i, j - i), ts.tokens);
    i = j;
  }
  ts.lower_tokens.reserve(ts.tokens.size());
  for (const auto& t : ts.tokens) ts.lower_tokens.push_back(to_lower(t));
  return ts;
}

bool is_alphabetic(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token)
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  return true;
}

bool has_alnum(std::string_view token) {
  for (char c : token)
    if (is_word_char(c)) return true;
  return false;
}

bool has_digit(std::string_view token) {
  for (char c : token)
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
  return false;
}

bool is_capitalized(std::string_view token) {
  return !token.empty() && std::isupper(static_cast<unsigned char>(token[0]));
}

}  // namespace revjudge::text
