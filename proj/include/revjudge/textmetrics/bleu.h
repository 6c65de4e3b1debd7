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

#ifndef REVJUDGE_TEXTMETRICS_BLEU_H_
#define REVJUDGE_TEXTMETRICS_BLEU_H_

#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

inline constexpr double kBleuEpsilon = 1e-9;

// Sentence-level BLEU over case-preserved tokens: brevity penalty times the
// geometric mean of clipped n-gram precisions, n = 1..max_n. A precision
// with no matches (or no hypothesis n-grams of that order) is replaced by
// `epsilon`. An empty hypothesis scores 0.
double sentence_bleu(const TokenizedSentence& reference,
                     const TokenizedSentence& hypothesis, int max_n = 4,
                     double epsilon = kBleuEpsilon);

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_BLEU_H_
