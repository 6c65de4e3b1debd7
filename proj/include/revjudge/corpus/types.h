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

#ifndef REVJUDGE_CORPUS_TYPES_H_
#define REVJUDGE_CORPUS_TYPES_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace revjudge {

enum class Label { Better, NotBetter };

std::string_view label_name(Label label);
// Accepts "Better" / "NotBetter". Throws ArgumentError otherwise.
Label parse_label(std::string_view text);

inline Label opposite(Label label) {
  return label == Label::Better ? Label::NotBetter : Label::Better;
}

enum class Source { ArgRewrite, AESW };

std::string_view source_name(Source source);
Source parse_source(std::string_view text);

// One (original, revised) sentence pair. The label is unset until crowd
// labels are aggregated or an expert edit implies it.
struct RevisionPair {
  std::string id;
  std::string s1;
  std::string s2;
  std::optional<Label> label;
  Source source = Source::ArgRewrite;
  std::map<std::string, std::string> meta;

  bool operator==(const RevisionPair&) const = default;
};

// Whitespace-collapsed, trimmed form used for "is this really a revision"
// equality checks. No case folding.
std::string normalize_for_equality(std::string_view text);

// Throws RejectedRecordError if either side is blank or both sides are
// equal after normalization.
void validate_pair(const RevisionPair& pair);

}  // namespace revjudge

#endif  // REVJUDGE_CORPUS_TYPES_H_
