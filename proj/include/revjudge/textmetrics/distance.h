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

#ifndef REVJUDGE_TEXTMETRICS_DISTANCE_H_
#define REVJUDGE_TEXTMETRICS_DISTANCE_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

enum class Granularity { Char, Token };

// Unit-cost Levenshtein distance over arbitrary sequences, two-row DP.
template <typename T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Char granularity counts Unicode code points (UTF-8 decoded); Token
// granularity compares case-preserved tokens from tokenize().
std::size_t levenshtein(std::string_view a, std::string_view b, Granularity g);
std::size_t levenshtein(const TokenizedSentence& a, const TokenizedSentence& b);

std::u32string decode_utf8(std::string_view text);

// Unigram count vectors of two sentences over the union of their
// (lowercased) vocabularies, aligned index by index.
std::pair<std::vector<double>, std::vector<double>> unigram_count_vectors(
    const TokenizedSentence& a, const TokenizedSentence& b);

// KL(p || q) = sum p_i ln(p_i / q_i) after adding epsilon to every count
// and renormalizing both vectors. Finite and >= 0. Throws ArgumentError if
// the vectors are empty, differ in length, or epsilon <= 0.
double kl_divergence(std::span<const double> p_counts,
                     std::span<const double> q_counts, double epsilon = 1e-6);

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_DISTANCE_H_
