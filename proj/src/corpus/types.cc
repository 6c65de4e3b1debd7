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

#include "revjudge/corpus/types.h"

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"

namespace revjudge {

std::string_view label_name(Label label) {
  return label == Label::Better ? "Better" : "NotBetter";
}

Label parse_label(std::string_view text) {
  if (text == "Better") return Label::Better;
  if (text == "NotBetter") return Label::NotBetter;
  throw ArgumentError("unknown label '" + std::string(text) + "'");
}

std::string_view source_name(Source source) {
  return source == Source::ArgRewrite ? "ArgRewrite" : "AESW";
}

Source parse_source(std::string_view text) {
  if (text == "ArgRewrite") return Source::ArgRewrite;
  if (text == "AESW") return Source::AESW;
  throw ArgumentError("unknown source '" + std::string(text) + "'");
}

std::string normalize_for_equality(std::string_view text) {
  return collapse_whitespace(text);
}

void validate_pair(const RevisionPair& pair) {
  if (trim(pair.s1).empty() || trim(pair.s2).empty())
    throw RejectedRecordError("pair '" + pair.id + "' has an empty sentence");
  if (normalize_for_equality(pair.s1) == normalize_for_equality(pair.s2))
    throw RejectedRecordError("pair '" + pair.id +
                              "' has identical original and revised text");
}

}  // namespace revjudge
