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

#include <random>
#include <sstream>

#include "doctest.h"
#include "feature_oracles.h"
#include "pair_generator.h"
#include "revjudge/common/error.h"
#include "revjudge/features/features.h"

using namespace revjudge;
using namespace revjudge::features;

namespace {

const text::MetricsToolkit& kit() {
  static auto k = text::MetricsToolkit::load(
      text::ResourcePaths::in_directory(std::string(REVJUDGE_DATA_DIR) + "/resources"));
  return *k;
}

using oracle::make_pair;
using oracle::random_pair;

}  // namespace

TEST_CASE("dense column inventory") {
  CHECK(dense_names().size() == kDenseCount);
  CHECK(dense_names().front() == "len_tokens_diff");
  CHECK(dense_names().back() == "height_diff");
  CHECK(is_diff_column(Dense::CommaDiff));
  CHECK_FALSE(is_diff_column(Dense::Bleu));
  CHECK_FALSE(is_diff_column(Dense::SpellingS1));
}

TEST_CASE("schema slots from set algebra") {
  std::vector<PairAnalysis> training = {analyze(make_pair("x", "a b", "a c"), kit())};
  auto schema = build_schema(training, 1);
  const auto& v = schema.ngram_vocab();
  for (const char* g : {"a", "b", "c"})
    for (Slot s : {Slot::Common, Slot::OnlyS1, Slot::OnlyS2}) CHECK(v.count({1, g, s}) == 1);
  CHECK(v.count({2, "a b", Slot::OnlyS1}) == 1);

  auto fv = extract(training[0], schema);
  CHECK(fv.get(v.at({1, "a", Slot::Common})) == 1);
  CHECK(fv.get(v.at({1, "b", Slot::OnlyS1})) == 1);
  CHECK(fv.get(v.at({1, "c", Slot::OnlyS2})) == 1);
  CHECK(fv.get(v.at({1, "b", Slot::OnlyS2})) == 0);
  CHECK(fv.get(v.at({1, "a", Slot::OnlyS1})) == 0);

  // Column indices are dense and non-overlapping.
  std::vector<bool> used(schema.width(), false);
  for (std::uint32_t c = 0; c < kDenseCount; ++c) used[c] = true;
  for (const auto& [key, c] : v) {
    REQUIRE(c < schema.width());
    CHECK_FALSE(used[c]);
    used[c] = true;
  }
  CHECK(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
}

TEST_CASE("min_df filters singleton grams") {
  std::vector<PairAnalysis> training = {analyze(make_pair("1", "alpha beta", "gamma"), kit()),
                                        analyze(make_pair("2", "delta", "epsilon zeta"), kit())};
  auto schema = build_schema(training, 2);
  CHECK(schema.ngram_count() == 0);
  CHECK(schema.width() == kDenseCount);
  CHECK(build_schema(training, 1).ngram_count() > 0);
  CHECK_THROWS_AS(build_schema(std::vector<PairAnalysis>{}, 2), ArgumentError);
}

TEST_CASE("multiset slot values") {
  std::vector<PairAnalysis> training = {analyze(make_pair("m", "a a a b", "a b b"), kit())};
  auto schema = build_schema(training, 1);
  auto fv = extract(training[0], schema);
  const auto& v = schema.ngram_vocab();
  CHECK(fv.get(v.at({1, "a", Slot::Common})) == 1);
  CHECK(fv.get(v.at({1, "a", Slot::OnlyS1})) == 2);
  CHECK(fv.get(v.at({1, "b", Slot::Common})) == 1);
  CHECK(fv.get(v.at({1, "b", Slot::OnlyS2})) == 1);
  CHECK(fv.get(v.at({2, "a a", Slot::OnlyS1})) == 2);
}

TEST_CASE("identity pair") {
  auto a = analyze(make_pair("i", "We text every day.", "We  text every day."), kit());
  auto schema = build_schema(std::vector<PairAnalysis>{a}, 1);
  auto fv = extract(a, schema);
  for (std::uint32_t c = 0; c < kDenseCount; ++c) {
    const Dense d = static_cast<Dense>(c);
    if (is_diff_column(d)) CHECK(fv.get(c) == 0.0);
  }
  CHECK(fv.get(static_cast<std::uint32_t>(Dense::Bleu)) == doctest::Approx(1.0));
  CHECK(fv.get(static_cast<std::uint32_t>(Dense::KlS1S2)) == 0.0);
  CHECK(fv.get(static_cast<std::uint32_t>(Dense::LevenshteinToken)) == 0.0);
  for (const auto& [key, c] : schema.ngram_vocab())
    if (key.slot != Slot::Common) CHECK(fv.get(c) == 0.0);
}

TEST_CASE("deletion example") {
  auto pair = make_pair("t1r2",
                        "Technology is changing the world, and in particular the way we communicate.",
                        "Technology is changing the way we communicate.");
  auto a = analyze(pair, kit());
  auto schema = build_schema(std::vector<PairAnalysis>{a}, 1);
  auto fv = extract(a, schema);
  CHECK(fv.get(static_cast<std::uint32_t>(Dense::TokenLenDiff)) == -6);
  CHECK(fv.get(static_cast<std::uint32_t>(Dense::CommaDiff)) == -1);
  bool any_only_s1 = false;
  for (const auto& [key, c] : schema.ngram_vocab()) {
    // A pure deletion adds no words; only n-grams spanning the junction are new.
    if (key.slot == Slot::OnlyS2 && key.n == 1) CHECK(fv.get(c) == 0.0);
    if (key.slot == Slot::OnlyS1 && fv.get(c) > 0) any_only_s1 = true;
  }
  CHECK(any_only_s1);
  CHECK(fv.get(schema.ngram_vocab().at({3, "changing the way", Slot::OnlyS2})) == 1);
  CHECK(fv.get(schema.ngram_vocab().at({1, "world", Slot::OnlyS1})) == 1);
  CHECK(fv.get(schema.ngram_vocab().at({1, "the", Slot::OnlyS1})) == 1);
  CHECK(fv.get(schema.ngram_vocab().at({1, "the", Slot::Common})) == 1);
}

TEST_CASE("extract matches the reference extractor and the swap property") {
  std::mt19937 rng(2024);
  std::vector<RevisionPair> pairs;
  for (int i = 0; i < 120; ++i) pairs.push_back(random_pair(rng, i));
  pairs.push_back(make_pair("t1", "Susan says by to Shelly on the 125th St.",
                            "Susan says bye to Shelly on the 125th St."));
  auto analyses = analyze_all(pairs, kit());
  auto schema = build_schema(analyses, 2);
  CHECK(schema.ngram_count() > 0);

  for (const auto& p : pairs) {
    auto fv = extract(p, schema, kit());
    CHECK(fv == extract(p, schema, kit()));
    const auto dense = fv.dense(schema.width());
    const auto reference = oracle::reference_extract(p, schema, kit());
    for (std::size_t c = 0; c < dense.size(); ++c) {
      if (c == static_cast<std::size_t>(Dense::Bleu))
        CHECK(std::abs(dense[c] - reference[c]) < 1e-9);
      else
        CHECK_MESSAGE(dense[c] == reference[c], schema.column_name(c) << " on " << p.id);
    }
    for (const auto& [c, v] : fv.values) {
      CHECK(c < schema.width());
      CHECK(v != 0.0);
    }
    auto swapped = make_pair(p.id, p.s2, p.s1);
    const auto rev = extract(swapped, schema, kit()).dense(schema.width());
    CHECK_MESSAGE(oracle::swap_violation(dense, rev, schema).empty(),
                  oracle::swap_violation(dense, rev, schema));
  }
}

TEST_CASE("schema serialization round trip") {
  std::mt19937 rng(5);
  std::vector<RevisionPair> pairs;
  for (int i = 0; i < 40; ++i) pairs.push_back(random_pair(rng, i));
  auto schema = build_schema(analyze_all(pairs, kit()), 2);
  std::stringstream buf;
  schema.save(buf);
  auto back = FeatureSchema::load(buf);
  CHECK(back.fingerprint() == schema.fingerprint());
  CHECK(back.column_names() == schema.column_names());
  CHECK(back.training_digest() == schema.training_digest());
  CHECK(extract(pairs[0], back, kit()) == extract(pairs[0], schema, kit()));

  std::string text;
  {
    std::stringstream again;
    schema.save(again);
    text = again.str();
  }
  auto tampered = text;
  tampered.replace(tampered.rfind("only_s2"), 7, "only_s1");
  std::istringstream bad(tampered);
  CHECK_THROWS_AS(FeatureSchema::load(bad), SchemaError);
  std::istringstream truncated(text.substr(0, 40));
  CHECK_THROWS_AS(FeatureSchema::load(truncated), ParseError);
}

TEST_CASE("schema fingerprint is deterministic and training-dependent") {
  std::mt19937 rng(6);
  std::vector<RevisionPair> pairs;
  for (int i = 0; i < 30; ++i) pairs.push_back(random_pair(rng, i));
  auto analyses = analyze_all(pairs, kit());
  CHECK(build_schema(analyses, 2).fingerprint() == build_schema(analyses, 2).fingerprint());
  auto fewer = analyses;
  fewer.pop_back();
  CHECK(build_schema(fewer, 2).training_digest() != build_schema(analyses, 2).training_digest());
}

TEST_CASE("resource mismatch is a configuration error") {
  auto a = analyze(make_pair("x", "a b", "a c"), kit());
  auto schema = build_schema(std::vector<PairAnalysis>{a}, 1);
  auto other = a;
  other.resource_fingerprint = "rj-tok-0:0000000000000000";
  CHECK_THROWS_AS(extract(other, schema), ConfigurationError);
}
