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

#ifndef REVJUDGE_TEXTMETRICS_NGRAM_H_
#define REVJUDGE_TEXTMETRICS_NGRAM_H_

#include <map>
#include <string>

#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

// n-gram (lowercased tokens joined by a single space) -> multiplicity.
using NgramCounts = std::map<std::string, int>;

// Throws ArgumentError unless 1 <= n <= 3.
NgramCounts ngram_multiset(const TokenizedSentence& ts, int n);

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_NGRAM_H_
