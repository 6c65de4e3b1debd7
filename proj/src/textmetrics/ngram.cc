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

#include "revjudge/textmetrics/ngram.h"

#include "revjudge/common/error.h"

namespace revjudge::text {

NgramCounts ngram_multiset(const TokenizedSentence& ts, int n) {
  if (n < 1 || n > 3) throw ArgumentError("n-gram order must be 1, 2 or 3");
  NgramCounts counts;
  const auto& toks = ts.lower_tokens;
  const std::size_t order = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + order <= toks.size(); ++i) {
    std::string gram = toks[i];
    for (std::size_t k = 1; k < order; ++k) {
      gram.push_back(' ');
      gram += toks[i + k];
    }
    ++counts[gram];
  }
  return counts;
}

}  // namespace revjudge::text
