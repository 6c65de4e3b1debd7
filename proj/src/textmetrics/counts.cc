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

#include "revjudge/textmetrics/counts.h"

#include "revjudge/common/util.h"
#include "revjudge/textmetrics/distance.h"

namespace revjudge::text {

CountStats count_stats(const TokenizedSentence& ts, const EntityRecognizer& entities) {
  CountStats stats;
  stats.token_len = ts.size();
  stats.char_len = decode_utf8(collapse_whitespace(ts.raw)).size();
  for (const auto& tok : ts.tokens) {
    if (tok == ",") ++stats.comma_count;
    if (!has_alnum(tok)) ++stats.symbol_count;
  }
  for (bool is_entity : entities.mark(ts)) stats.ne_count += is_entity;
  return stats;
}

}  // namespace revjudge::text
