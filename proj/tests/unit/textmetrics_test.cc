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

#include <cmath>
#include <fstream>
#include <random>
#include <cstdio>

#include "doctest.h"
#include "oracles.h"
#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/textmetrics/bleu.h"
#include "revjudge/textmetrics/counts.h"
#include "revjudge/textmetrics/distance.h"
#include "revjudge/textmetrics/ngram.h"
#include "revjudge/textmetrics/toolkit.h"

using namespace revjudge;
using namespace revjudge::text;

namespace {

const MetricsToolkit& kit() {
  static auto k = MetricsToolkit::load(
      ResourcePaths::in_directory(std::string(REVJUDGE_DATA_DIR) + "/resources"));
  return *k;
}

TokenizedSentence from_tokens(const std::vector<std::string>& toks) {
  return tokenize(join(toks, " "));
}

}  // namespace

TEST_CASE("tokenize") {
  CHECK(tokenize("Hello, world.").tokens == std::vector<std::string>{"Hello", ",", "world", "."});
  CHECK(tokenize("").tokens.empty());
  CHECK(tokenize("   ").tokens.empty());
  CHECK(tokenize("can't stop").tokens == std::vector<std::string>{"can't", "stop"});
  CHECK(tokenize("a well-known (test)...").tokens ==
        std::vector<std::string>{"a", "well-known", "(", "test", ")", "..."});
  CHECK(tokenize("at 4:30pm, \"quoted\"").tokens ==
        std::vector<std::string>{"at", "4:30pm", ",", "\"", "quoted", "\""});
  auto ts = tokenize("The Cat");
  CHECK(ts.lower_tokens == std::vector<std::string>{"the", "cat"});
}

TEST_CASE("ngram_multiset") {
  auto ts = tokenize("a b a");
  CHECK(ngram_multiset(ts, 1) == NgramCounts{{"a", 2}, {"b", 1}});
  CHECK(ngram_multiset(ts, 2) == NgramCounts{{"a b", 1}, {"b a", 1}});
  CHECK(ngram_multiset(tokenize("a b"), 3).empty());
  CHECK_THROWS_AS(ngram_multiset(ts, 0), ArgumentError);
  CHECK_THROWS_AS(ngram_multiset(ts, 4), ArgumentError);

  std::mt19937 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = from_tokens(oracle::random_tokens(rng, 12, 5));
    for (int n = 1; n <= 3; ++n) {
      int total = 0;
      for (const auto& [_, c] : ngram_multiset(t, n)) total += c;
      CHECK(total == std::max(0, static_cast<int>(t.size()) - n + 1));
    }
  }
}

TEST_CASE("levenshtein examples") {
  CHECK(levenshtein("by", "bye", Granularity::Char) == 1);
  CHECK(levenshtein("same", "same", Granularity::Char) == 0);
  CHECK(levenshtein("", "abc", Granularity::Char) == 3);
  CHECK(levenshtein("kitten", "sitting", Granularity::Char) == 3);
  CHECK(levenshtein("caf\xc3\xa9", "cafe", Granularity::Char) == 1);
  CHECK(levenshtein("Susan says by to Shelly", "Susan says bye to Shelly", Granularity::Token) == 1);
}

TEST_CASE("levenshtein matches naive recursion and is a metric") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string a = oracle::random_string(rng, 7);
    const std::string b = oracle::random_string(rng, 7);
    const std::string c = oracle::random_string(rng, 7);
    const std::size_t ab = levenshtein(a, b, Granularity::Char);
    CHECK(ab == oracle::naive_levenshtein(a, b));
    CHECK(ab == levenshtein(b, a, Granularity::Char));
    CHECK((ab == 0) == (a == b));
    CHECK(ab <= levenshtein(a, c, Granularity::Char) + levenshtein(c, b, Granularity::Char));

    auto ta = from_tokens(oracle::random_tokens(rng, 6, 4));
    auto tb = from_tokens(oracle::random_tokens(rng, 6, 4));
    auto tc = from_tokens(oracle::random_tokens(rng, 6, 4));
    const std::size_t tab = levenshtein(ta, tb);
    CHECK(tab == oracle::naive_levenshtein(ta.tokens, tb.tokens));
    CHECK(tab == levenshtein(tb, ta));
    CHECK(tab <= levenshtein(ta, tc) + levenshtein(tc, tb));
  }
}

TEST_CASE("kl_divergence") {
  std::vector<double> p = {3, 1, 0, 2};
  CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-12));
  std::vector<double> a = {1, 0}, b = {1, 1};
  CHECK(std::abs(kl_divergence(a, b, 1e-12) - std::log(2.0)) < 1e-6);
  std::vector<double> x = {5, 1, 0}, y = {1, 2, 3};
  CHECK(kl_divergence(x, y) != doctest::Approx(kl_divergence(y, x)));
  CHECK(std::isfinite(kl_divergence(x, y)));

  std::vector<double> empty;
  CHECK_THROWS_AS(kl_divergence(empty, empty), ArgumentError);
  CHECK_THROWS_AS(kl_divergence(a, b, 0.0), ArgumentError);

  std::mt19937 rng(4);
  std::uniform_int_distribution<int> count(0, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> u(1 + trial % 9), v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = count(rng);
      v[i] = count(rng);
    }
    CHECK(kl_divergence(u, v) >= 0.0);
  }

  auto [cp, cq] = unigram_count_vectors(tokenize("a b b"), tokenize("b c"));
  CHECK(cp == std::vector<double>{1, 2, 0});
  CHECK(cq == std::vector<double>{0, 1, 1});
}

TEST_CASE("sentence_bleu") {
  auto ref = tokenize("the cat sat on the mat");
  CHECK(sentence_bleu(ref, ref) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sentence_bleu(ref, tokenize("dogs bark loudly here")) <= 1e-3);
  CHECK(sentence_bleu(ref, tokenize("")) == 0.0);

  // Clipped precisions 5/6, 3/5, 2/4, 1/3 and equal lengths.
  const double bleu = sentence_bleu(ref, tokenize("the cat sat on a mat"));
  CHECK(std::abs(bleu - std::pow(5.0 / 6 * 3.0 / 5 * 2.0 / 4 * 1.0 / 3, 0.25)) < 1e-12);
  CHECK(std::abs(bleu - oracle::direct_bleu(ref.tokens, tokenize("the cat sat on a mat").tokens,
                                            4, kBleuEpsilon)) < 1e-9);

  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    auto r = from_tokens(oracle::random_tokens(rng, 12, 6));
    auto h = from_tokens(oracle::random_tokens(rng, 12, 6));
    const double b = sentence_bleu(r, h);
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    CHECK(std::abs(b - oracle::direct_bleu(r.tokens, h.tokens, 4, kBleuEpsilon)) < 1e-9);
    if (r.size() >= 4) CHECK(sentence_bleu(r, r) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("count_stats") {
  const auto& entities = kit().entities();
  auto s = count_stats(tokenize("Susan says bye, Shelly."), entities);
  CHECK(s.comma_count == 1);
  CHECK(s.ne_count == 2);
  CHECK(s.token_len == 6);
  CHECK(s.char_len == 23);
  CHECK(count_stats(tokenize(""), entities) == CountStats{});
  CHECK(count_stats(tokenize("a + b"), entities).symbol_count == 1);
  CHECK(count_stats(tokenize("Technology is changing the way I talk."), entities).ne_count == 0);
}

TEST_CASE("error_counts") {
  const auto& checker = kit().checker();
  auto e = checker.check(tokenize("social networkings provide"));
  CHECK(e.spelling + e.grammar >= 1);
  CHECK(checker.misspellings(tokenize("social networkings provide")) ==
        std::vector<std::string>{"networkings"});
  CHECK(checker.check(tokenize("The students wrote a short essay.")) == ErrorCounts{0, 0});
  CHECK(checker.check(tokenize("a apple")) == ErrorCounts{0, 1});
  CHECK(checker.fired_rules(tokenize("a apple")) == std::vector<std::string>{"A_BEFORE_VOWEL"});
  CHECK(checker.check(tokenize("It is an hour away.")).grammar == 0);
  CHECK(checker.check(tokenize("It is a university.")).grammar == 0);
  CHECK(checker.check(tokenize("They has the the book.")).grammar == 2);
  CHECK(checker.check(tokenize("we left (early.")).grammar == 2);
  CHECK(checker.check(tokenize("Susan says by to Shelly.")).spelling == 0);
  CHECK(checker.check(tokenize("She recieved teh letter.")).spelling == 2);
}

TEST_CASE("resource loading errors") {
  auto paths = ResourcePaths::in_directory(std::string(REVJUDGE_DATA_DIR) + "/resources");
  auto missing_dict = paths;
  missing_dict.dictionary = "/nonexistent/dictionary.txt";
  CHECK_THROWS_AS(MetricsToolkit::load(missing_dict), ConfigurationError);
  auto missing_weights = paths;
  missing_weights.specificity_weights = "/nonexistent/weights.txt";
  CHECK_THROWS_AS(MetricsToolkit::load(missing_weights), ConfigurationError);
  CHECK_THROWS_AS(GrammarRule::parse("X", "{bogus}", ""), ConfigurationError);
}

TEST_CASE("specificity") {
  const auto& model = kit().specificity();
  for (const char* s : {"", "Yes.", "The meeting is soon.",
                        "In 2017, 42 researchers at MIT and Stanford published 7 papers."}) {
    const double v = model.score(tokenize(s)).value;
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v == model.score(tokenize(s)).value);
  }
  const double specific =
      model.score(tokenize("The meeting is at 4:30pm on March 3 in Room 5017.")).value;
  const double vague = model.score(tokenize("The meeting is soon.")).value;
  CHECK(specific > vague);
}

TEST_CASE("heuristic syntax") {
  const auto& syntax = kit().syntax();
  auto s = syntax.stats(tokenize("I left because it rained."));
  CHECK(s.sbar_count == 1);
  CHECK(s.provider == SyntaxSource::Heuristic);
  CHECK(s.vp_count == 2);
  CHECK(s.np_count == 2);
  CHECK(s.tree_height >= 1);

  for (const char* single : {"Hello", "Go.", "Technology"}) {
    auto t = syntax.stats(tokenize(single));
    CHECK(t.np_count + t.vp_count <= 1);
    CHECK(t.tree_height <= 2);
    CHECK(t.tree_height >= 1);
  }
  CHECK(syntax.stats(tokenize("")).tree_height == 0);

  auto nested = syntax.stats(
      tokenize("We think that people who text often write less when they are tired."));
  CHECK(nested.sbar_count == 3);
}

TEST_CASE("precomputed syntax sidecar") {
  const std::string path = "precomputed_syntax_test.tsv";
  auto known = tokenize("The balance equations are formulated.");
  {
    std::ofstream out(path);
    out << "# hash\tsbar\tvp\tnp\theight\n" << sentence_hash(known) << "\t0\t2\t1\t6\n";
  }
  auto strict = PrecomputedSyntax::load(path);
  auto s = strict.stats(known);
  CHECK(s.provider == SyntaxSource::Precomputed);
  CHECK(s == SyntaxStats{0, 2, 1, 6, SyntaxSource::Precomputed});
  CHECK_THROWS_AS(strict.stats(tokenize("Unknown sentence.")), LookupError);

  auto paths = ResourcePaths::in_directory(std::string(REVJUDGE_DATA_DIR) + "/resources");
  paths.syntax_sidecar = path;
  auto with_fallback = MetricsToolkit::load(paths);
  CHECK(with_fallback->syntax().stats(tokenize("Unknown sentence.")).provider ==
        SyntaxSource::Heuristic);
  CHECK(with_fallback->fingerprint() != kit().fingerprint());

  {
    std::ofstream out(path);
    out << sentence_hash(known) << "\t-1\t2\t1\t6\n";
  }
  CHECK_THROWS_AS(PrecomputedSyntax::load(path), ParseError);
  std::remove(path.c_str());
}
