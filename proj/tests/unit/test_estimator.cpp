// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "annotation/annotation.hpp"
#include "common/error.hpp"
#include "estimator/estimator.hpp"
#include "support/estimator_fixtures.hpp"

using namespace ccqg;
using namespace ccqg::estimator;

namespace {

double oracle_js(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0) total += 0.5 * p[i] * std::log(p[i] / m);
    if (q[i] > 0) total += 0.5 * q[i] * std::log(q[i] / m);
  }
  return total / std::log(2.0);
}

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n, bool sparse) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) {
    v = sparse && u(rng) < 0.4 ? 0.0 : u(rng);
    total += v;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (auto& v : p) v /= total;
  return p;
}

bool close(double actual, double expected, double rel) {
  return std::abs(actual - expected) <= rel * std::max(1.0, std::abs(expected));
}

}  // namespace

TEST_CASE("js_divergence examples") {
  const std::vector<double> a{1.0, 0.0}, b{0.0, 1.0}, c{0.5, 0.5};
  CHECK(js_divergence(a, a) == 0.0);
  CHECK(js_divergence(a, b) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(js_divergence(a, c) == doctest::Approx(0.31127812445913283).epsilon(1e-12));
  const std::vector<double> d{0.25, 0.75};
  CHECK(js_divergence(c, d) == doctest::Approx(oracle_js(c, d)).epsilon(1e-12));
  CHECK_THROWS_AS(js_divergence(a, std::vector<double>{1.0}), UsageError);
}

TEST_CASE("js_divergence properties over random pairs") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    auto p = random_distribution(rng, n, trial % 2 == 0);
    auto q = random_distribution(rng, n, trial % 3 == 0);
    const double d = js_divergence(p, q);
    CHECK(std::abs(d - js_divergence(q, p)) <= 1e-12);
    CHECK(d >= -1e-12);
    CHECK(d <= 1.0 + 1e-12);
    CHECK(std::abs(js_divergence(p, p)) <= 1e-12);
    CHECK(std::abs(d - oracle_js(p, q)) <= 1e-12);
  }
}

TEST_CASE("raw features match the reference fixtures") {
  for (const auto& fx : testing::estimator_fixtures()) {
    CAPTURE(fx.name);
    auto q = annotation::parse_conllu(fx.question_conllu);
    auto p = annotation::parse_conllu(fx.passage_conllu);
    REQUIRE(q.size() == 1);
    REQUIRE(p.size() == 1);
    auto f = compute_raw_features(q[0], p[0], data::TokenRange{fx.answer_span[0], fx.answer_span[1]});
    const auto got = f.as_array();
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      CAPTURE(i);
      CHECK(close(got[i], fx.expected[i], 1e-9));
    }
  }
}

TEST_CASE("raw features through the annotation index") {
  const auto& fx = testing::estimator_fixtures().front();
  auto docs = annotation::parse_conllu(fx.question_conllu + fx.passage_conllu);
  auto index = annotation::index_documents(docs);
  data::QAInstance inst;
  inst.id = "fx0";
  std::vector<std::string> forms;
  for (const auto& s : docs[1].sentences)
    for (const auto& t : s.tokens) forms.push_back(t.form);
  for (std::size_t i = fx.answer_span[0]; i < fx.answer_span[1]; ++i) inst.answer_text += forms[i] + " ";
  auto f = compute_raw_features(inst, index).as_array();
  for (std::size_t i = 0; i < kNumFeatures; ++i) CHECK(close(f[i], fx.expected[i], 1e-9));

  inst.id = "missing";
  CHECK_THROWS_AS(compute_raw_features(inst, index), DataError);
}

TEST_CASE("single-sentence passage takes the coherence floor") {
  auto p = annotation::tokenize_fallback("Rivers flow north.");
  CHECK(feature_topic_coherence(p) == doctest::Approx(1.0 / kCoherenceFloor));
  EstimatorOptions direct;
  direct.f3_mode = F3Mode::Direct;
  CHECK(feature_topic_coherence(p, direct) == doctest::Approx(kCoherenceFloor));
}

TEST_CASE("questions without entities") {
  auto q = annotation::tokenize_fallback("what flows north?");
  auto p = annotation::tokenize_fallback("The river flows north. Boats sail on it.");
  CHECK(feature_entity_frequency(q, p) == 1.0);
  CHECK(feature_entity_answer_distance(q, p, {0, 2}) == static_cast<double>(p.token_count()));
}

TEST_CASE("locate_answer") {
  auto p = annotation::tokenize_fallback("The Old Bridge spans the river. The bridge is old.");
  auto r = locate_answer(p, "old  BRIDGE");
  REQUIRE(r.has_value());
  CHECK(*r == data::TokenRange{1, 3});
  CHECK_FALSE(locate_answer(p, "castle").has_value());
}

TEST_CASE("normalizer: fit, normalize and score") {
  std::vector<ComplexityFeatures> fs{
      ComplexityFeatures::from_array({1, 0, 2, 1, 0}),
      ComplexityFeatures::from_array({3, 4, 2, 5, 10}),
  };
  auto n = fit_normalizer(fs, 0.5);
  CHECK(n.min == FeatureVector{1, 0, 2, 1, 0});
  CHECK(n.max == FeatureVector{3, 4, 2, 5, 10});
  auto v = normalize(ComplexityFeatures::from_array({2, 8, 7, -1, 5}), n);
  CHECK(v == FeatureVector{0.5, 1.0, 0.0, 0.0, 0.5});
  CHECK(cpx_score(v) == doctest::Approx(0.4));
  CHECK(classify(0.5, 0.5) == ComplexityLabel::Simple);
  CHECK(classify(0.5000001, 0.5) == ComplexityLabel::Complex);
  auto e = estimate(fs[1], n);
  CHECK(e.score == doctest::Approx(0.8));
  CHECK(e.label == ComplexityLabel::Complex);
  CHECK_THROWS_AS(fit_normalizer(std::vector<ComplexityFeatures>{}), DataError);
  CHECK_THROWS_AS(fit_normalizer(fs, 1.5), UsageError);
}

TEST_CASE("normalized features and scores stay in [0, 1] (random)") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ComplexityFeatures> fs;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 10); ++i) {
      fs.push_back(ComplexityFeatures::from_array({u(rng), u(rng), u(rng), u(rng), u(rng)}));
    }
    auto n = fit_normalizer(fs);
    for (int i = 0; i < 20; ++i) {
      auto v = normalize(ComplexityFeatures::from_array({u(rng), u(rng), u(rng), u(rng), u(rng)}), n);
      for (double x : v) CHECK((x >= 0.0 && x <= 1.0));
      const double s = cpx_score(v);
      CHECK((s >= 0.0 && s <= 1.0));
    }
  }
}

TEST_CASE("calibrate_threshold recovers a planted threshold") {
  std::vector<double> scores;
  std::vector<ComplexityLabel> gold;
  for (int k = 0; k < 200; ++k) {
    const double t = k / 199.0;
    scores.push_back(t);
    gold.push_back(t > 0.65 ? ComplexityLabel::Complex : ComplexityLabel::Simple);
  }
  auto c = calibrate_threshold(scores, gold);
  CHECK(std::abs(c.lambda - 0.65) <= 0.01);
  CHECK(c.macro_f1 == 1.0);

  std::vector<ComplexityLabel> one(scores.size(), ComplexityLabel::Simple);
  CHECK_THROWS_AS(calibrate_threshold(scores, one), DataError);
}

TEST_CASE("calibrate_threshold breaks ties toward the smaller threshold") {
  const std::vector<double> scores{0.1, 0.9};
  const std::vector<ComplexityLabel> gold{ComplexityLabel::Simple, ComplexityLabel::Complex};
  auto c = calibrate_threshold(scores, gold);
  CHECK(c.lambda == doctest::Approx(0.1));
  CHECK(c.macro_f1 == 1.0);
}

TEST_CASE("confusion-matrix scores") {
  auto in = evaluate_confusion({5271, 155, 210, 3407});
  CHECK(in.macro_f1 == doctest::Approx(0.9578462584165053).epsilon(1e-12));
  CHECK(std::abs(in.macro_f1 - 0.958) <= 5e-4);
  auto out = evaluate_confusion({93, 15, 12, 67});
  CHECK(out.weighted_f1 == doctest::Approx(0.8559433794115543).epsilon(1e-12));
  CHECK(std::abs(out.weighted_f1 - 0.856) <= 5e-4);

  using L = ComplexityLabel;
  const std::vector<L> gold{L::Simple, L::Simple, L::Complex, L::Complex, L::Complex};
  const std::vector<L> pred{L::Simple, L::Complex, L::Complex, L::Complex, L::Simple};
  auto e = evaluate_estimator(pred, gold);
  CHECK(e.confusion == ConfusionMatrix{1, 1, 1, 2});
  CHECK(e.f1_simple == doctest::Approx(0.5));
  CHECK(e.f1_complex == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(evaluate_estimator(pred, std::vector<L>{}), UsageError);
}

TEST_CASE("normalizer serialization round trip") {
  FeatureNormalizer n;
  n.min = {1.0, 0.0, 0.1234567890123, 1.0, 0.0};
  n.max = {5.0, 8.0, 1e6, 10.0, 1.0 / 3.0};
  n.lambda = 0.37;
  auto back = parse_normalizer(serialize_normalizer(n));
  CHECK(back.min == n.min);
  CHECK(back.max == n.max);
  CHECK(back.lambda == n.lambda);
  CHECK_THROWS_AS(parse_normalizer("lambda x\n"), DataError);
  CHECK(parse_f3_mode("direct") == F3Mode::Direct);
  CHECK_THROWS_AS(parse_f3_mode("sideways"), UsageError);
}
