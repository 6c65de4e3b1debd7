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

#ifndef REVJUDGE_FEATURES_FEATURES_H_
#define REVJUDGE_FEATURES_FEATURES_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revjudge/corpus/types.h"
#include "revjudge/textmetrics/checker.h"
#include "revjudge/textmetrics/counts.h"
#include "revjudge/textmetrics/ngram.h"
#include "revjudge/textmetrics/syntax.h"
#include "revjudge/textmetrics/tokenizer.h"
#include "revjudge/textmetrics/toolkit.h"

namespace revjudge::features {

enum class Slot { Common, OnlyS1, OnlyS2 };
std::string_view slot_name(Slot slot);
Slot parse_slot(std::string_view name);

inline constexpr int kMaxNgram = 3;
inline constexpr std::size_t kDefaultMinDf = 2;

// Fixed dense columns, in column order. Every "*_diff" is value(S2) - value(S1).
enum class Dense : std::uint32_t {
  TokenLenDiff,
  CharLenDiff,
  CommaDiff,
  SymbolDiff,
  EntityDiff,
  LevenshteinChar,
  LevenshteinToken,
  KlS1S2,
  KlS2S1,
  Bleu,
  SpellingS1,
  SpellingS2,
  SpellingDiff,
  GrammarS1,
  GrammarS2,
  GrammarDiff,
  SpecificityS1,
  SpecificityS2,
  SpecificityDiff,
  SbarDiff,
  VpDiff,
  NpDiff,
  HeightDiff,
};
inline constexpr std::size_t kDenseCount = 23;
const std::array<std::string_view, kDenseCount>& dense_names();
bool is_diff_column(Dense d);

// Everything the extractor needs from one side of a pair.
struct SideAnalysis {
  text::TokenizedSentence tokens;
  std::array<text::NgramCounts, kMaxNgram> ngrams;
  text::CountStats counts;
  text::ErrorCounts errors;
  double specificity = 0.0;
  text::SyntaxStats syntax;
};

// Schema-independent analysis of a pair. Computed once and reused by every
// fold that sees the pair.
struct PairAnalysis {
  std::string id;
  std::string resource_fingerprint;
  SideAnalysis s1, s2;
  std::size_t levenshtein_char = 0;
  std::size_t levenshtein_token = 0;
  double kl_s1_s2 = 0.0;
  double kl_s2_s1 = 0.0;
  double bleu = 0.0;
};

PairAnalysis analyze(const RevisionPair& pair, const text::MetricsToolkit& toolkit);
std::vector<PairAnalysis> analyze_all(const std::vector<RevisionPair>& pairs,
                                      const text::MetricsToolkit& toolkit);

struct NgramKey {
  int n = 1;
  std::string gram;
  Slot slot = Slot::Common;

  auto operator<=>(const NgramKey&) const = default;
};

class FeatureSchema {
 public:
  std::size_t width() const { return kDenseCount + ngram_columns_.size(); }
  std::size_t ngram_count() const { return ngram_columns_.size(); }
  const std::map<NgramKey, std::uint32_t>& ngram_vocab() const { return ngram_vocab_; }
  const std::vector<NgramKey>& ngram_columns() const { return ngram_columns_; }

  // Human-readable column name ("len_tokens_diff", "ng2:only_s1:the cat").
  std::string column_name(std::uint32_t column) const;
  std::vector<std::string> column_names() const;

  const std::string& tokenizer_version() const { return tokenizer_version_; }
  const std::string& resource_fingerprint() const { return resource_fingerprint_; }
  std::size_t min_df() const { return min_df_; }
  std::size_t training_pairs() const { return training_pairs_; }
  const std::string& training_digest() const { return training_digest_; }
  // Hash over everything above plus the full column table.
  const std::string& fingerprint() const { return fingerprint_; }

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static FeatureSchema load(std::istream& in);
  static FeatureSchema load_file(const std::string& path);

  friend FeatureSchema build_schema(const std::vector<const PairAnalysis*>& training,
                                    std::size_t min_df);

 private:
  void finalize();

  std::map<NgramKey, std::uint32_t> ngram_vocab_;
  std::vector<NgramKey> ngram_columns_;
  std::string tokenizer_version_;
  std::string resource_fingerprint_;
  std::size_t min_df_ = kDefaultMinDf;
  std::size_t training_pairs_ = 0;
  std::string training_digest_;
  std::string fingerprint_;
};

// Digest of a sorted id list; recorded in the schema so a harness can audit
// which pairs the vocabulary came from.
std::string id_digest(std::vector<std::string> ids);

// Document frequency counts a pair once if the gram occurs on either side.
FeatureSchema build_schema(const std::vector<const PairAnalysis*>& training, std::size_t min_df);
FeatureSchema build_schema(const std::vector<PairAnalysis>& training,
                           std::size_t min_df = kDefaultMinDf);

struct FeatureVector {
  std::string schema_version;
  std::vector<std::pair<std::uint32_t, double>> values;  // sorted by index, nonzero only

  double get(std::uint32_t column) const;
  std::vector<double> dense(std::size_t width) const;
  bool operator==(const FeatureVector&) const = default;
};

FeatureVector extract(const PairAnalysis& analysis, const FeatureSchema& schema);
FeatureVector extract(const RevisionPair& pair, const FeatureSchema& schema,
                      const text::MetricsToolkit& toolkit);

}  // namespace revjudge::features

#endif  // REVJUDGE_FEATURES_FEATURES_H_
