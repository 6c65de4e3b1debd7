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

#include "revjudge/textmetrics/bleu.h"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "revjudge/common/error.h"

namespace revjudge::text {
namespace {

std::map<std::vector<std::string>, int> count_ngrams(
    const std::vector<std::string>& toks, std::size_t n) {
  std::map<std::vector<std::string>, int> counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i)
    ++counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)];
  return counts;
}

}  // namespace

double sentence_bleu(const TokenizedSentence& reference,
                     const TokenizedSentence& hypothesis, int max_n,
                     double epsilon) {
  if (max_n < 1) throw ArgumentError("BLEU max_n must be >= 1");
  if (hypothesis.empty()) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto order = static_cast<std::size_t>(n);
    const auto hyp = count_ngrams(hypothesis.tokens, order);
    const auto ref = count_ngrams(reference.tokens, order);
    long matches = 0, total = 0;
    for (const auto& [gram, count] : hyp) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) matches += std::min(count, it->second);
    }
    const double precision =
        matches > 0 ? static_cast<double>(matches) / static_cast<double>(total)
                    : epsilon;
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(hypothesis.size());
  const double r = static_cast<double>(reference.size());
  const double brevity = c > r ? 1.0 : std::exp(1.0 - r / c);
  return brevity * std::exp(log_sum / max_n);
}

}  // namespace revjudge::text
