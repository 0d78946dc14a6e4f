// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include <json.hpp>

#include "common/error.hpp"
#include "common/text.hpp"
#include "eval/metrics.hpp"
#include "support/metric_goldens.hpp"

using namespace ccqg;
using namespace ccqg::eval;

namespace {

Tokens toks(const std::string& s) { return split_whitespace(s); }

Tokens random_sentence(std::mt19937_64& rng, std::size_t vocab) {
  Tokens t(1 + rng() % 12);
  for (auto& w : t) w = "w" + std::to_string(rng() % vocab);
  return t;
}

}  // namespace

TEST_CASE("sentence metrics match the reference values") {
  for (const auto& g : testing::metric_goldens()) {
    CAPTURE(g.candidate);
    CHECK(std::abs(sentence_bleu4(toks(g.candidate), toks(g.reference)) - g.bleu4) <= 1e-6);
    CHECK(std::abs(rouge_l(toks(g.candidate), toks(g.reference)) - g.rouge_l) <= 1e-6);
  }
  CHECK(sentence_bleu4(toks("a b c"), toks("a b c d")) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-12));
  CHECK(rouge_l(toks("a b c d"), toks("a c b d")) == 0.75);
}

TEST_CASE("identical sentences score exactly one") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_sentence(rng, 6);
    CHECK(sentence_bleu4(s, s) == 1.0);
    CHECK(rouge_l(s, s) == 1.0);
  }
  CHECK(bleu4({toks("x y"), toks("p q r s t")}, {toks("x y"), toks("p q r s t")}) == 1.0);
}

TEST_CASE("metrics are invariant under token renaming") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto c = random_sentence(rng, 5);
    auto r = random_sentence(rng, 5);
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < 5; ++i) rename["w" + std::to_string(i)] = "v" + std::to_string((i * 3 + trial) % 5);
    Tokens c2, r2;
    for (auto& w : c) c2.push_back(rename[w]);
    for (auto& w : r) r2.push_back(rename[w]);
    CHECK(sentence_bleu4(c, r) == sentence_bleu4(c2, r2));
    CHECK(rouge_l(c, r) == rouge_l(c2, r2));
    const double b = sentence_bleu4(c, r);
    CHECK((b >= 0.0 && b <= 1.0));
    const double l = rouge_l(c, r);
    CHECK((l >= 0.0 && l <= 1.0));
    CHECK(lcs_length(c, r) == lcs_length(r, c));
  }
}

TEST_CASE("corpus BLEU pools counts") {
  const std::vector<Tokens> c{toks("a b c"), toks("d e f g")};
  const std::vector<Tokens> r{toks("a b c d"), toks("d e f g")};
  // Pooled: 1-grams 7/7, 2-grams 5/5, 3-grams 3/3, 4-grams 1/1; lengths 7 vs 8.
  CHECK(bleu4(c, r) == doctest::Approx(std::exp(1.0 - 8.0 / 7.0)).epsilon(1e-12));
  CHECK_THROWS_AS(bleu4(c, {r[0]}), UsageError);
  CHECK(sentence_bleu4({}, toks("a")) == 0.0);
  CHECK_THROWS_AS(rouge_l({}, toks("a")), UsageError);
  CHECK(rouge_l(toks("a"), toks("b")) == 0.0);
  CHECK(rouge_l_corpus(c, r) == doctest::Approx((6.0 / 7.0 + 1.0) / 2.0));
}

TEST_CASE("consistency F1") {
  using L = ComplexityLabel;
  // Complex: TP 2, FP 1, FN 1.
  const std::vector<L> target{L::Complex, L::Complex, L::Complex, L::Simple, L::Simple};
  const std::vector<L> predicted{L::Complex, L::Complex, L::Simple, L::Complex, L::Simple};
  auto r = consistency_f1(target, predicted);
  CHECK(r.f1_complex == doctest::Approx(2.0 / 3.0));
  CHECK(r.f1_simple == doctest::Approx(0.5));
  CHECK(r.macro_f1 == doctest::Approx((2.0 / 3.0 + 0.5) / 2.0));
  CHECK(r.count == 5);

  auto by_text = consistency_f1({"short", "the one that is long"}, {L::Simple, L::Complex},
                                [](const std::string& q) { return q.size() > 10 ? L::Complex : L::Simple; });
  CHECK(by_text.macro_f1 == 1.0);
  CHECK_THROWS_AS(consistency_f1(target, {L::Simple}), UsageError);
}

TEST_CASE("pairwise diversity") {
  CHECK(pairwise_diversity({toks("a b c d")}, {toks("a b c d")}) == 0.0);
  CHECK(pairwise_diversity({toks("a b c d")}, {toks("w x y z")}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pairwise_diversity({}, {}), UsageError);
}

TEST_CASE("report serialization") {
  EvalReport r;
  r.bleu4 = 0.5;
  r.consistency.macro_f1 = 0.75;
  r.pairs = 3;
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["bleu4"] == 0.5);
  CHECK(j["consistency"]["macro_f1"] == 0.75);
  CHECK(j["pairs"] == 3);
  CHECK(split(EvalReport::tsv_header(), '\t').size() == split(r.tsv_row(), '\t').size());
}
