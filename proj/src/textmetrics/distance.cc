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

#include "revjudge/textmetrics/distance.h"

#include <cmath>
#include <map>

#include "revjudge/common/error.h"

namespace revjudge::text {

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    char32_t cp = c;
    if (c >= 0xf0 && c < 0xf8) {
      len = 4;
      cp = c & 0x07;
    } else if (c >= 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if (c >= 0xc0) {
      len = 2;
      cp = c & 0x1f;
    }
    if (len > 1 && i + len <= text.size()) {
      bool ok = true;
      for (std::size_t k = 1; k < len; ++k) {
        const auto cc = static_cast<unsigned char>(text[i + k]);
        if ((cc & 0xc0) != 0x80) ok = false;
        cp = (cp << 6) | (cc & 0x3f);
      }
      if (ok) {
        out.push_back(cp);
        i += len;
        continue;
      }
    }
    // Invalid sequence: keep the raw byte as its own code unit.
    out.push_back(c);
    ++i;
  }
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b, Granularity g) {
  if (g == Granularity::Char) {
    const std::u32string ua = decode_utf8(a), ub = decode_utf8(b);
    return edit_distance<char32_t>(ua, ub);
  }
  return levenshtein(tokenize(a), tokenize(b));
}

std::size_t levenshtein(const TokenizedSentence& a, const TokenizedSentence& b) {
  return edit_distance<std::string>(a.tokens, b.tokens);
}

std::pair<std::vector<double>, std::vector<double>> unigram_count_vectors(
    const TokenizedSentence& a, const TokenizedSentence& b) {
  std::map<std::string, std::pair<double, double>> counts;
  for (const auto& t : a.lower_tokens) counts[t].first += 1.0;
  for (const auto& t : b.lower_tokens) counts[t].second += 1.0;
  std::pair<std::vector<double>, std::vector<double>> out;
  out.first.reserve(counts.size());
  out.second.reserve(counts.size());
  for (const auto& [_, c] : counts) {
    out.first.push_back(c.first);
    out.second.push_back(c.second);
  }
  return out;
}

double kl_divergence(std::span<const double> p_counts,
                     std::span<const double> q_counts, double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("kl_divergence epsilon must be > 0");
  if (p_counts.empty() && q_counts.empty())
    throw ArgumentError("kl_divergence of two empty vectors");
  if (p_counts.size() != q_counts.size())
    throw ArgumentError("kl_divergence vectors must share a vocabulary");
  double p_total = 0.0, q_total = 0.0;
  for (std::size_t i = 0; i < p_counts.size(); ++i) {
    if (p_counts[i] < 0.0 || q_counts[i] < 0.0)
      throw ArgumentError("kl_divergence counts must be non-negative");
    p_total += p_counts[i] + epsilon;
    q_total += q_counts[i] + epsilon;
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p_counts.size(); ++i) {
    const double p = (p_counts[i] + epsilon) / p_total;
    const double q = (q_counts[i] + epsilon) / q_total;
    kl += p * std::log(p / q);
  }
  // Rounding can leave a -1e-17 residue for equal distributions.
  return kl < 0.0 ? 0.0 : kl;
}

}  // namespace revjudge::text
