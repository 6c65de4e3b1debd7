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

#ifndef REVJUDGE_AESW_AESW_H_
#define REVJUDGE_AESW_AESW_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "revjudge/corpus/types.h"

namespace revjudge::aesw {

enum class SegmentKind { Kept, Deleted, Inserted };

struct Segment {
  SegmentKind kind = SegmentKind::Kept;
  std::string text;

  bool operator==(const Segment&) const = default;
};

// A proofread sentence as a sequence of kept, deleted and inserted spans.
struct EditedSentence {
  std::string sid;
  std::vector<Segment> segments;
  std::optional<std::string> genre;

  // Kept + Deleted spans, in order.
  std::string original() const;
  // Kept + Inserted spans, in order.
  std::string revised() const;
  bool has_edits() const;
  // Same sentence with every deletion turned into an insertion and vice
  // versa; inverted().original() == revised().
  EditedSentence inverted() const;
};

// Streaming reader over AESW-style markup:
//
//   <doc did="3" domain="Mathematics"><p>
//   <sentence sid="3.1">This is expensive<ins>,</ins> but works.</sentence>
//   </p></doc>
//
// `<del>` marks original-only text and `<ins>` revised-only text. The
// `domain` (or `genre`) attribute of the enclosing element becomes the
// sentence genre. Text outside <sentence> elements is ignored.
class AeswReader {
 public:
  explicit AeswReader(std::istream& in);

  // Next sentence in document order, or nullopt at end of input.
  // Throws ParseError on unbalanced markup and UnsupportedStructureError
  // on nested edit spans; both name the sentence id.
  std::optional<EditedSentence> next();

 private:
  int get();
  std::string read_tag();

  std::istream& in_;
  std::optional<std::string> genre_;
};

std::vector<EditedSentence> parse_aesw(std::istream& in);
std::vector<EditedSentence> parse_aesw_file(const std::string& path);

// Better-labeled AESW pair, or nullopt when the sentence carries no edit
// or the edit leaves the text unchanged up to whitespace.
std::optional<RevisionPair> reconstruct_pair(const EditedSentence& sentence);

const std::set<std::string>& default_placeholders();

// True if any whitespace-delimited token, with surrounding punctuation and
// underscores stripped, equals a placeholder exactly.
bool contains_placeholder(std::string_view text,
                          const std::set<std::string>& placeholders);

enum class SampleMode { All, Plaintext };

std::string_view sample_mode_name(SampleMode mode);
SampleMode parse_sample_mode(std::string_view text);

struct SampleConfig {
  std::size_t n = 5000;
  SampleMode mode = SampleMode::All;
  double flip_prob = 0.5;
  std::uint64_t seed = 0;
  std::set<std::string> placeholder_tokens = default_placeholders();
};

// Pairs eligible under `mode` (Plaintext drops any pair with a placeholder
// on either side).
std::vector<RevisionPair> eligible_pairs(const std::vector<RevisionPair>& pairs,
                                         const SampleConfig& config);

// Uniform sample without replacement of config.n eligible pairs. Throws
// CapacityError (carrying the eligible count) if too few are eligible.
std::vector<RevisionPair> sample_pairs(const std::vector<RevisionPair>& pairs,
                                       const SampleConfig& config);

// Independently swaps s1/s2 and relabels NotBetter with probability
// flip_prob. Every output pair carries meta "flipped" = "true"/"false".
// Throws ArgumentError on any input not labeled Better.
std::vector<RevisionPair> flip_labels(const std::vector<RevisionPair>& pairs,
                                      double flip_prob, std::uint64_t seed);

struct DevSplit {
  std::vector<RevisionPair> dev;
  std::vector<RevisionPair> rest;
};

// Seeded holdout of round(fraction * size) pairs for hyperparameter tuning,
// drawn before any experiment sampling.
DevSplit split_dev(const std::vector<RevisionPair>& pairs, double fraction,
                   std::uint64_t seed);

// Line-delimited export: {"sid","s1","s2","label","flipped"[,"genre"]}.
void write_export(std::ostream& out, const std::vector<RevisionPair>& pairs);
std::vector<RevisionPair> read_export(std::istream& in);
std::vector<RevisionPair> read_export_file(const std::string& path);

}  // namespace revjudge::aesw

#endif  // REVJUDGE_AESW_AESW_H_
