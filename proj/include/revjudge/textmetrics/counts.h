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

#ifndef REVJUDGE_TEXTMETRICS_COUNTS_H_
#define REVJUDGE_TEXTMETRICS_COUNTS_H_

#include <cstddef>

#include "revjudge/textmetrics/lexicon.h"
#include "revjudge/textmetrics/tokenizer.h"

namespace revjudge::text {

struct CountStats {
  std::size_t token_len = 0;
  std::size_t char_len = 0;  // code points, whitespace runs collapsed
  std::size_t comma_count = 0;
  std::size_t symbol_count = 0;  // tokens without any alphanumeric character
  std::size_t ne_count = 0;

  bool operator==(const CountStats&) const = default;
};

CountStats count_stats(const TokenizedSentence& ts, const EntityRecognizer& entities);

}  // namespace revjudge::text

#endif  // REVJUDGE_TEXTMETRICS_COUNTS_H_
