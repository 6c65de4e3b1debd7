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

#ifndef REVJUDGE_CORPUS_CORPUS_H_
#define REVJUDGE_CORPUS_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "revjudge/corpus/types.h"

namespace revjudge {

// Crowd labels for one pair. Odd label count keeps majority voting decisive.
struct AnnotationSet {
  std::string pair_id;
  std::vector<Label> labels;
  std::vector<std::string> comments;

  bool operator==(const AnnotationSet&) const = default;
};

// A parsed record. Raw-label records carry `annotations` and leave
// `pair.label` unset; pre-aggregated records set `pair.label` directly.
struct CorpusEntry {
  RevisionPair pair;
  std::optional<AnnotationSet> annotations;

  bool operator==(const CorpusEntry&) const = default;
};

struct RejectedRecord {
  std::size_t line = 0;
  std::string id;
  std::string reason;
};

struct ParseOptions {
  std::size_t n_raters = 7;
  // Throw on rejected records instead of logging and skipping them.
  bool strict = false;
};

struct ParseResult {
  std::vector<CorpusEntry> entries;
  std::vector<RejectedRecord> rejected;
};

// Reads a pair file: JSON lines, or the tab-separated fixture variant
// (id, s1, s2, label) when the first non-blank line is not an object.
ParseResult parse_pairs(std::istream& in, const ParseOptions& options = {});
ParseResult parse_pairs_file(const std::string& path,
                             const ParseOptions& options = {});

// Inverse of parse_pairs for the JSON-lines form.
void write_pairs(std::ostream& out, const std::vector<CorpusEntry>& entries);

Label majority_label(const AnnotationSet& annotations);
// Number of annotators who chose the majority label.
std::size_t majority_votes(const AnnotationSet& annotations);

// Keeps entries whose winning label has at least `threshold` votes.
// Throws ArgumentError unless ceil(n_raters/2) <= threshold <= n_raters or
// if an entry lacks raw annotations.
std::vector<CorpusEntry> filter_by_majority(
    const std::vector<CorpusEntry>& entries, std::size_t threshold,
    std::size_t n_raters = 7);

// Gold-labeled pairs: majority vote for raw records, the given label for
// pre-aggregated ones. Entries with neither are returned unlabeled.
std::vector<RevisionPair> aggregate_labels(
    const std::vector<CorpusEntry>& entries);

// Throws ArgumentError on an unlabeled pair.
std::map<Label, std::size_t> class_distribution(
    const std::vector<RevisionPair>& pairs);

}  // namespace revjudge

#endif  // REVJUDGE_CORPUS_CORPUS_H_
