// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "common/error.hpp"
#include "model/model.hpp"
#include "support/synthetic.hpp"
#include "train/train.hpp"

using namespace ccqg;
using namespace ccqg::train;

namespace {

model::ModelConfig small_config() {
  model::ModelConfig c;
  c.n_z = 2;
  c.n_pi = 4;
  c.top_k = 2;
  c.dim_complexity = 4;
  c.dim_expert = 4;
  c.dim_template = 8;
  c.hidden = 16;
  c.word_dim = 16;
  c.max_decode_len = 16;
  return c;
}

TrainConfig fast_train() {
  TrainConfig t;
  t.lr = 0.01;
  t.threads = 4;
  t.max_epochs = 3;
  t.kmeans_restarts = 2;
  return t;
}

std::vector<TrainingExample> overfit_examples() { return make_examples(testing::overfit_corpus()); }

data::Vocab overfit_vocab() { return data::build_vocab(testing::overfit_corpus(), 1000); }

// Plain Lloyd iterations used as a reference.
double oracle_lloyd(const Points& points, Points centroids, std::size_t max_iter) {
  std::vector<std::size_t> assign(points.size(), 0);
  for (std::size_t it = 0; it < max_iter; ++it) {
    bool changed = it == 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < centroids.size(); ++c) {
        double d = 0.0;
        for (std::size_t j = 0; j < points[i].size(); ++j) d += std::pow(points[i][j] - centroids[c][j], 2);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      changed |= assign[i] != best;
      assign[i] = best;
    }
    if (!changed) break;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      std::vector<double> mean(points[0].size(), 0.0);
      std::size_t n = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (assign[i] != c) continue;
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += points[i][j];
        ++n;
      }
      if (n == 0) continue;
      for (auto& v : mean) v /= static_cast<double>(n);
      centroids[c] = mean;
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& c : centroids) {
      double d = 0.0;
      for (std::size_t j = 0; j < c.size(); ++j) d += std::pow(points[i][j] - c[j], 2);
      best_d = std::min(best_d, d);
    }
    total += best_d;
  }
  return total;
}

Points random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Points p(n, std::vector<double>(dim));
  for (auto& row : p)
    for (auto& v : row) v = g(rng);
  return p;
}

}  // namespace

TEST_CASE("train config") {
  auto t = fast_train();
  CHECK_NOTHROW(t.validate());
  t.lr = 0.0;
  CHECK_NOTHROW(t.validate());
  t.lr = -1.0;
  CHECK_THROWS_AS(t.validate(), UsageError);
  t = fast_train();
  t.batch_size = 0;
  CHECK_THROWS_AS(t.validate(), UsageError);
  t = fast_train();
  t.freeze_templates = true;
  auto back = TrainConfig::from_map(t.to_map());
  CHECK(back.to_map() == t.to_map());
  CHECK(parse_embedding_source("file") == EmbeddingSource::File);
  CHECK_THROWS_AS(parse_embedding_source("glove"), UsageError);
}

TEST_CASE("examples need a label") {
  auto corpus = testing::overfit_corpus();
  CHECK(make_examples(corpus).size() == corpus.size());
  corpus[0].gold_complexity.reset();
  CHECK_THROWS_AS(make_example(corpus[0]), DataError);
  corpus[0].predicted_complexity = ComplexityLabel::Complex;
  CHECK(make_example(corpus[0]).level == ComplexityLabel::Complex);
  CHECK(make_example(corpus[0]).source.answer == std::vector<std::string>{"red"});
}

TEST_CASE("question embedders") {
  auto e = QuestionEmbedder::internal(6, 1);
  auto a = e.embed({"river"});
  CHECK(a.size() == 6);
  CHECK(a == QuestionEmbedder::internal(6, 1).embed({"river"}));
  CHECK(a != QuestionEmbedder::internal(6, 2).embed({"river"}));
  for (double v : a) CHECK(std::abs(v) <= 1.0);
  auto b = e.embed({"river", "sea"});
  auto s = e.embed({"sea"});
  for (std::size_t i = 0; i < 6; ++i) CHECK(b[i] == doctest::Approx((a[i] + s[i]) / 2.0));

  auto f = QuestionEmbedder::parse("2 3\nriver 1 2 3\nsea -1 0 1\n", 2);
  CHECK(f.embed({"river"}) == std::vector<double>{1, 2});
  CHECK(f.embed({"river", "lake"}) == std::vector<double>{0.5, 1});
  auto g = QuestionEmbedder::parse("2 3\nriver 1 2 3\nsea -1 0 1\n", 4);
  CHECK(g.embed({"sea"}) == std::vector<double>{-1, 0, 1, 0});
  CHECK_THROWS_AS(QuestionEmbedder::parse("two three\n", 2), DataError);
  CHECK_THROWS_AS(QuestionEmbedder::from_file("/nonexistent/vectors.txt", 2), DataError);
}

TEST_CASE("k-means is no worse than one seeded Lloyd run and never increases WCSS") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 data_rng(seed * 101);
    auto points = random_points(data_rng, 20 + seed * 3, 1 + seed % 4);
    const std::size_t k = 2 + seed % 4;
    auto result = kmeans(points, k, seed, 3, 100);
    std::mt19937_64 rng(seed);
    auto init = kmeans_plus_plus(points, k, rng);
    CHECK(result.wcss <= oracle_lloyd(points, init, 100) + 1e-9);
    CHECK(result.wcss == doctest::Approx(wcss(points, result.centroids, result.assignment)));
    for (std::size_t i = 1; i < result.wcss_history.size(); ++i) {
      CHECK(result.wcss_history[i] <= result.wcss_history[i - 1] + 1e-12);
    }
    CHECK(result.centroids.size() == k);
    CHECK(result.assignment.size() == points.size());
  }
}

TEST_CASE("k-means recovers well separated clusters") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 0.05);
  const Points centers{{0, 0}, {10, 0}, {0, 10}};
  Points points;
  for (std::size_t i = 0; i < 60; ++i) points.push_back({centers[i % 3][0] + g(rng), centers[i % 3][1] + g(rng)});
  auto r = kmeans(points, 3, 1, 5, 100);
  for (std::size_t i = 0; i < 60; ++i) CHECK(r.assignment[i] == r.assignment[i % 3]);
  CHECK(r.assignment[0] != r.assignment[1]);
  CHECK(r.assignment[1] != r.assignment[2]);
  CHECK(r.assignment[0] != r.assignment[2]);
}

TEST_CASE("k-means edge cases") {
  Points same(5, std::vector<double>{1.0, 1.0});
  auto r = kmeans(same, 3, 1, 2, 10);
  CHECK(r.wcss == 0.0);
  CHECK_THROWS_AS(kmeans(same, 6, 1, 1, 10), DataError);
  CHECK_THROWS_AS(kmeans(same, 0, 1, 1, 10), UsageError);
  CHECK(squared_distance({1, 2}, {4, 6}) == 25.0);
}

TEST_CASE("template banks are initialized from both levels") {
  auto examples = overfit_examples();
  auto cfg = fast_train();
  auto embedder = make_embedder(cfg, 8);
  auto bank = init_template_bank(examples, ComplexityLabel::Complex, 4, embedder, cfg);
  CHECK(bank.size() == 4);
  CHECK(bank[0].size() == 8);
  auto padded = init_template_bank({examples[0], examples[1]}, ComplexityLabel::Simple, 3, embedder, cfg);
  CHECK(padded.size() == 3);
  CHECK(std::abs(padded[1][0] - padded[0][0]) < 0.1);
  CHECK_THROWS_AS(init_template_bank({examples[0]}, ComplexityLabel::Complex, 3, embedder, cfg), DataError);

  model::CcqgModel m(small_config(), overfit_vocab(), 1);
  init_template_banks(m, examples, cfg);
  const auto& t = m.parameters().get(model::CcqgModel::template_parameter(ComplexityLabel::Simple));
  auto expected = init_template_bank(examples, ComplexityLabel::Simple, 4, make_embedder(cfg, 8), cfg);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 8; ++c) CHECK(t.at(r, c) == expected[r][c]);
}

TEST_CASE("select_expert") {
  CHECK(select_expert({2.3, 1.1, 4.0}) == 1);
  CHECK(select_expert({1.0, 1.0, 2.0}) == 0);
  CHECK(select_expert({5.0}) == 0);
}

TEST_CASE("E-step picks the brute-force best expert") {
  auto examples = overfit_examples();
  auto cfg = small_config();
  cfg.n_z = 3;
  model::CcqgModel m(cfg, overfit_vocab(), 4);
  std::vector<std::size_t> expected(3, 0);
  for (const auto& ex : examples) {
    std::size_t best = 0;
    double best_loss = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < 3; ++z) {
      const double loss = -m.sequence_log_prob(ex.source, ex.question, ex.level, z).item();
      if (loss < best_loss) {
        best_loss = loss;
        best = z;
      }
    }
    ++expected[best];
  }
  auto t = fast_train();
  t.batch_size = examples.size();
  HardEmTrainer trainer(m, t);
  CHECK(trainer.epoch(examples).selection_counts == expected);
}

TEST_CASE("without the mixture every example goes to expert 0") {
  auto examples = overfit_examples();
  auto cfg = small_config();
  cfg.n_z = 3;
  cfg.use_moe = false;
  model::CcqgModel m(cfg, overfit_vocab(), 4);
  HardEmTrainer trainer(m, fast_train());
  CHECK(trainer.epoch(examples).selection_counts == std::vector<std::size_t>{examples.size(), 0, 0});
}

TEST_CASE("zero learning rate converges after two epochs") {
  auto examples = overfit_examples();
  model::CcqgModel m(small_config(), overfit_vocab(), 2);
  auto t = fast_train();
  t.lr = 0.0;
  t.max_epochs = 10;
  HardEmTrainer trainer(m, t);
  auto report = trainer.train(examples, examples);
  CHECK(report.converged);
  CHECK(report.epochs.size() == 2);
  CHECK(report.epochs[0].dev_nll == report.epochs[1].dev_nll);
}

TEST_CASE("training fits a small corpus and is reproducible") {
  auto examples = overfit_examples();
  auto t = fast_train();
  t.max_epochs = 6;
  t.convergence_eps = 1e-12;
  model::CcqgModel m1(small_config(), overfit_vocab(), 2);
  model::CcqgModel m2(small_config(), overfit_vocab(), 2);
  const double initial = HardEmTrainer(m1, t).dev_nll(examples);
  auto r1 = HardEmTrainer(m1, t).train(examples, examples);
  auto r2 = HardEmTrainer(m2, t).train(examples, examples);
  REQUIRE(r1.epochs.size() == 6);
  CHECK(r1.best_dev_nll < 0.5 * initial);
  for (std::size_t e = 0; e < r1.epochs.size(); ++e) {
    CHECK(r1.epochs[e].dev_nll == r2.epochs[e].dev_nll);
    CHECK(r1.epochs[e].selection_counts == r2.epochs[e].selection_counts);
  }
  CHECK(nn::serialize_parameters(m1.parameters()) == nn::serialize_parameters(m2.parameters()));

  HardEmTrainer probe(m1, t);
  CHECK(probe.dev_nll(examples) == doctest::Approx(r1.best_dev_nll).epsilon(1e-12));
  auto dir = std::filesystem::temp_directory_path() / "ccqg_test_train_ckpt";
  std::filesystem::remove_all(dir);
  m1.save(dir);
  auto loaded = model::CcqgModel::load(dir);
  CHECK(std::abs(HardEmTrainer(loaded, t).dev_nll(examples) - r1.best_dev_nll) <= 1e-12);

  auto tsv = format_report_tsv(r1);
  CHECK(tsv.find("epoch") == 0);
}

TEST_CASE("empty training set is a data error") {
  model::CcqgModel m(small_config(), overfit_vocab(), 2);
  HardEmTrainer trainer(m, fast_train());
  CHECK_THROWS_AS(trainer.epoch({}), DataError);
}
