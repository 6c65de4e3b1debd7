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

#include "revjudge/features/features.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/textmetrics/bleu.h"
#include "revjudge/textmetrics/distance.h"

namespace revjudge::features {
namespace {

constexpr std::string_view kSchemaMagic = "revjudge-schema";
constexpr int kSchemaFormat = 1;

SideAnalysis analyze_side(const std::string& text, const text::MetricsToolkit& kit) {
  SideAnalysis side;
  side.tokens = text::tokenize(text);
  for (int n = 1; n <= kMaxNgram; ++n) side.ngrams[n - 1] = text::ngram_multiset(side.tokens, n);
  side.counts = text::count_stats(side.tokens, kit.entities());
  side.errors = kit.checker().check(side.tokens);
  side.specificity = kit.specificity().score(side.tokens).value;
  side.syntax = kit.syntax().stats(side.tokens);
  return side;
}

double as_double(std::size_t v) { return static_cast<double>(v); }

double diff(std::size_t s1, std::size_t s2) { return as_double(s2) - as_double(s1); }

}  // namespace

std::string_view slot_name(Slot slot) {
  switch (slot) {
    case Slot::Common:
      return "common";
    case Slot::OnlyS1:
      return "only_s1";
    case Slot::OnlyS2:
      return "only_s2";
  }
  return "?";
}

Slot parse_slot(std::string_view name) {
  for (Slot s : {Slot::Common, Slot::OnlyS1, Slot::OnlyS2})
    if (slot_name(s) == name) return s;
  throw ArgumentError("unknown n-gram slot '" + std::string(name) + "'");
}

const std::array<std::string_view, kDenseCount>& dense_names() {
  static const std::array<std::string_view, kDenseCount> names = {
      "len_tokens_diff", "len_chars_diff",  "comma_diff",       "symbol_diff",
      "ne_diff",         "lev_char",        "lev_token",        "kl_s1_s2",
      "kl_s2_s1",        "bleu",            "spelling_s1",      "spelling_s2",
      "spelling_diff",   "grammar_s1",      "grammar_s2",       "grammar_diff",
      "specificity_s1",  "specificity_s2",  "specificity_diff", "sbar_diff",
      "vp_diff",         "np_diff",         "height_diff"};
  return names;
}

bool is_diff_column(Dense d) {
  return dense_names()[static_cast<std::size_t>(d)].ends_with("_diff");
}

PairAnalysis analyze(const RevisionPair& pair, const text::MetricsToolkit& toolkit) {
  PairAnalysis a;
  a.id = pair.id;
  a.resource_fingerprint = toolkit.fingerprint();
  a.s1 = analyze_side(pair.s1, toolkit);
  a.s2 = analyze_side(pair.s2, toolkit);
  a.levenshtein_char = text::levenshtein(collapse_whitespace(pair.s1),
                                         collapse_whitespace(pair.s2), text::Granularity::Char);
  a.levenshtein_token = text::levenshtein(a.s1.tokens, a.s2.tokens);
  auto [p, q] = text::unigram_count_vectors(a.s1.tokens, a.s2.tokens);
  if (!p.empty()) {
    a.kl_s1_s2 = text::kl_divergence(p, q);
    a.kl_s2_s1 = text::kl_divergence(q, p);
  }
  a.bleu = text::sentence_bleu(a.s1.tokens, a.s2.tokens);
  return a;
}

std::vector<PairAnalysis> analyze_all(const std::vector<RevisionPair>& pairs,
                                      const text::MetricsToolkit& toolkit) {
  std::vector<PairAnalysis> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(analyze(p, toolkit));
  return out;
}

std::string id_digest(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  std::uint64_t h = fnv1a64("ids");
  for (const auto& id : ids) {
    h = fnv1a64(id, h);
    h = fnv1a64("\n", h);
  }
  return to_hex(h);
}

std::string FeatureSchema::column_name(std::uint32_t column) const {
  if (column < kDenseCount) return std::string(dense_names()[column]);
  const std::size_t k = column - kDenseCount;
  if (k >= ngram_columns_.size())
    throw ArgumentError("column " + std::to_string(column) + " is outside the schema");
  const NgramKey& key = ngram_columns_[k];
  return "ng" + std::to_string(key.n) + ":" + std::string(slot_name(key.slot)) + ":" + key.gram;
}

std::vector<std::string> FeatureSchema::column_names() const {
  std::vector<std::string> names;
  names.reserve(width());
  for (std::uint32_t c = 0; c < width(); ++c) names.push_back(column_name(c));
  return names;
}

void FeatureSchema::finalize() {
  ngram_columns_.clear();
  std::uint32_t next = kDenseCount;
  for (auto& [key, column] : ngram_vocab_) {
    column = next++;
    ngram_columns_.push_back(key);
  }
  std::uint64_t h = fnv1a64(kSchemaMagic);
  std::ostringstream header;
  header << tokenizer_version_ << '\t' << resource_fingerprint_ << '\t' << min_df_ << '\t'
         << training_pairs_ << '\t' << training_digest_;
  h = fnv1a64(header.str(), h);
  for (std::uint32_t c = 0; c < width(); ++c) {
    h = fnv1a64(column_name(c), h);
    h = fnv1a64("\n", h);
  }
  fingerprint_ = to_hex(h);
}

FeatureSchema build_schema(const std::vector<const PairAnalysis*>& training, std::size_t min_df) {
  if (training.empty()) throw ArgumentError("cannot build a schema from an empty training set");
  if (min_df == 0) throw ArgumentError("min_df must be at least 1");
  FeatureSchema schema;
  schema.tokenizer_version_ = std::string(text::kTokenizerVersion);
  schema.resource_fingerprint_ = training.front()->resource_fingerprint;
  schema.min_df_ = min_df;
  schema.training_pairs_ = training.size();

  std::vector<std::string> ids;
  std::map<std::pair<int, std::string>, std::size_t> df;
  for (const PairAnalysis* a : training) {
    if (a->resource_fingerprint != schema.resource_fingerprint_)
      throw ConfigurationError("training pairs were analyzed with different resources");
    ids.push_back(a->id);
    for (int n = 1; n <= kMaxNgram; ++n) {
      std::set<std::string_view> seen;
      for (const auto& [gram, _] : a->s1.ngrams[n - 1]) seen.insert(gram);
      for (const auto& [gram, _] : a->s2.ngrams[n - 1]) seen.insert(gram);
      for (auto gram : seen) ++df[{n, std::string(gram)}];
    }
  }
  for (const auto& [ng, count] : df) {
    if (count < min_df) continue;
    for (Slot s : {Slot::Common, Slot::OnlyS1, Slot::OnlyS2})
      schema.ngram_vocab_.emplace(NgramKey{ng.first, ng.second, s}, 0);
  }
  schema.training_digest_ = id_digest(std::move(ids));
  schema.finalize();
  return schema;
}

FeatureSchema build_schema(const std::vector<PairAnalysis>& training, std::size_t min_df) {
  std::vector<const PairAnalysis*> ptrs;
  ptrs.reserve(training.size());
  for (const auto& a : training) ptrs.push_back(&a);
  return build_schema(ptrs, min_df);
}

void FeatureSchema::save(std::ostream& out) const {
  out << kSchemaMagic << ' ' << kSchemaFormat << '\n'
      << "fingerprint\t" << fingerprint_ << '\n'
      << "tokenizer\t" << tokenizer_version_ << '\n'
      << "resources\t" << resource_fingerprint_ << '\n'
      << "min_df\t" << min_df_ << '\n'
      << "training_pairs\t" << training_pairs_ << '\n'
      << "training_digest\t" << training_digest_ << '\n'
      << "dense\t" << kDenseCount << '\n'
      << "ngrams\t" << ngram_columns_.size() << '\n';
  for (const auto& key : ngram_columns_)
    out << key.n << '\t' << slot_name(key.slot) << '\t' << key.gram << '\n';
}

void FeatureSchema::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write schema '" + path + "'");
  save(out);
}

FeatureSchema FeatureSchema::load(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) throw ParseError("truncated schema", line_no + 1);
    ++line_no;
    return line;
  };
  auto field = [&](std::string_view name) -> std::string {
    auto cols = split(next_line(), '\t');
    if (cols.size() != 2 || cols[0] != name)
      throw SchemaError("expected schema field '" + std::string(name) + "'", line_no);
    return cols[1];
  };
  auto number = [&](std::string_view name) -> std::size_t {
    const std::string v = field(name);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      throw SchemaError("schema field '" + std::string(name) + "' is not a count", line_no);
    return std::stoull(v);
  };

  if (next_line() != std::string(kSchemaMagic) + " " + std::to_string(kSchemaFormat))
    throw SchemaError("not a revjudge schema (or unsupported format version)", line_no);
  FeatureSchema schema;
  const std::string fingerprint = field("fingerprint");
  schema.tokenizer_version_ = field("tokenizer");
  schema.resource_fingerprint_ = field("resources");
  schema.min_df_ = number("min_df");
  schema.training_pairs_ = number("training_pairs");
  schema.training_digest_ = field("training_digest");
  if (number("dense") != kDenseCount)
    throw SchemaError("dense column count differs from this build", line_no);
  const std::size_t n_ngrams = number("ngrams");
  for (std::size_t i = 0; i < n_ngrams; ++i) {
    auto cols = split(next_line(), '\t');
    if (cols.size() != 3 || cols[0].size() != 1 || cols[0][0] < '1' ||
        cols[0][0] > '0' + kMaxNgram)
      throw SchemaError("malformed n-gram column", line_no);
    NgramKey key{cols[0][0] - '0', cols[2], parse_slot(cols[1])};
    if (!schema.ngram_vocab_.emplace(std::move(key), 0).second)
      throw SchemaError("duplicate n-gram column", line_no);
  }
  schema.finalize();
  if (schema.fingerprint_ != fingerprint)
    throw SchemaError("schema fingerprint does not match its contents", 2);
  return schema;
}

FeatureSchema FeatureSchema::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open schema '" + path + "'");
  return load(in);
}

double FeatureVector::get(std::uint32_t column) const {
  auto it = std::lower_bound(values.begin(), values.end(), column,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != values.end() && it->first == column ? it->second : 0.0;
}

std::vector<double> FeatureVector::dense(std::size_t width) const {
  std::vector<double> out(width, 0.0);
  for (const auto& [c, v] : values) {
    if (c >= width) throw ArgumentError("feature index outside the requested width");
    out[c] = v;
  }
  return out;
}

FeatureVector extract(const PairAnalysis& a, const FeatureSchema& schema) {
  if (schema.tokenizer_version() != text::kTokenizerVersion)
    throw ConfigurationError("schema tokenizer '" + schema.tokenizer_version() +
                             "' differs from the configured tokenizer '" +
                             std::string(text::kTokenizerVersion) + "'");
  if (a.resource_fingerprint != schema.resource_fingerprint())
    throw ConfigurationError("schema was built with resources " + schema.resource_fingerprint() +
                             " but the pair was analyzed with " + a.resource_fingerprint);

  const std::array<double, kDenseCount> dense = {
      diff(a.s1.counts.token_len, a.s2.counts.token_len),
      diff(a.s1.counts.char_len, a.s2.counts.char_len),
      diff(a.s1.counts.comma_count, a.s2.counts.comma_count),
      diff(a.s1.counts.symbol_count, a.s2.counts.symbol_count),
      diff(a.s1.counts.ne_count, a.s2.counts.ne_count),
      as_double(a.levenshtein_char),
      as_double(a.levenshtein_token),
      a.kl_s1_s2,
      a.kl_s2_s1,
      a.bleu,
      as_double(a.s1.errors.spelling),
      as_double(a.s2.errors.spelling),
      diff(a.s1.errors.spelling, a.s2.errors.spelling),
      as_double(a.s1.errors.grammar),
      as_double(a.s2.errors.grammar),
      diff(a.s1.errors.grammar, a.s2.errors.grammar),
      a.s1.specificity,
      a.s2.specificity,
      a.s2.specificity - a.s1.specificity,
      diff(a.s1.syntax.sbar_count, a.s2.syntax.sbar_count),
      diff(a.s1.syntax.vp_count, a.s2.syntax.vp_count),
      diff(a.s1.syntax.np_count, a.s2.syntax.np_count),
      diff(a.s1.syntax.tree_height, a.s2.syntax.tree_height),
  };

  FeatureVector fv;
  fv.schema_version = schema.fingerprint();
  for (std::uint32_t c = 0; c < kDenseCount; ++c)
    if (dense[c] != 0.0) fv.values.emplace_back(c, dense[c]);

  const auto& vocab = schema.ngram_vocab();
  NgramKey probe;
  auto emit = [&](int n, const std::string& gram, Slot slot, int value) {
    if (value <= 0) return;
    probe.n = n;
    probe.gram = gram;
    probe.slot = slot;
    if (auto it = vocab.find(probe); it != vocab.end())
      fv.values.emplace_back(it->second, static_cast<double>(value));
  };
  for (int n = 1; n <= kMaxNgram; ++n) {
    const auto& m1 = a.s1.ngrams[n - 1];
    const auto& m2 = a.s2.ngrams[n - 1];
    for (const auto& [gram, c1] : m1) {
      auto it = m2.find(gram);
      const int c2 = it == m2.end() ? 0 : it->second;
      emit(n, gram, Slot::Common, std::min(c1, c2));
      emit(n, gram, Slot::OnlyS1, c1 - c2);
      emit(n, gram, Slot::OnlyS2, c2 - c1);
    }
    for (const auto& [gram, c2] : m2)
      if (!m1.count(gram)) emit(n, gram, Slot::OnlyS2, c2);
  }
  std::sort(fv.values.begin(), fv.values.end());
  return fv;
}

FeatureVector extract(const RevisionPair& pair, const FeatureSchema& schema,
                      const text::MetricsToolkit& toolkit) {
  return extract(analyze(pair, toolkit), schema);
}

}  // namespace revjudge::features
