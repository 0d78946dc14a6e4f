// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Template-bank initialization from question clusters and hard-EM training.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "common/label.hpp"
#include "data/qa_instance.hpp"
#include "model/model.hpp"
#include "nn/adam.hpp"

namespace ccqg::train {

enum class EmbeddingSource { Internal, File };
EmbeddingSource parse_embedding_source(std::string_view text);

struct TrainConfig {
  double lr = 0.001;
  double convergence_eps = 1e-6;
  std::size_t max_epochs = 50;
  std::size_t batch_size = 1;
  std::uint64_t seed = 13;
  EmbeddingSource embedding_source = EmbeddingSource::Internal;
  std::filesystem::path embedding_file;
  std::size_t kmeans_restarts = 5;
  std::size_t kmeans_max_iter = 100;
  bool freeze_templates = false;
  std::size_t threads = 1;

  // lr may be 0 (frozen parameters); everything else must be positive.
  void validate() const;
  std::map<std::string, std::string> to_map() const;
  static TrainConfig from_map(const std::map<std::string, std::string>& values);
};

struct TrainingExample {
  model::SourceInput source;
  std::vector<std::string> question;
  ComplexityLabel level = ComplexityLabel::Simple;
};

// Throws ccqg::DataError when the instance has no label.
TrainingExample make_example(const data::QAInstance& instance);
std::vector<TrainingExample> make_examples(const std::vector<data::QAInstance>& instances);

// ---- question embeddings ------------------------------------------------------------

class QuestionEmbedder {
 public:
  // Every token gets a vector drawn uniformly from [-1, 1] by a generator keyed
  // on (seed, token).
  static QuestionEmbedder internal(std::size_t dim, std::uint64_t seed);
  // word2vec text format: "count dim" header, then "token v1 ... v_dim" lines.
  // Vectors are truncated or zero-padded to `dim`.
  static QuestionEmbedder from_file(const std::filesystem::path& path, std::size_t dim);
  static QuestionEmbedder parse(std::string_view text, std::size_t dim);

  std::size_t dim() const { return dim_; }
  // Mean of the token vectors; unknown tokens contribute zeros.
  std::vector<double> embed(const std::vector<std::string>& tokens) const;

 private:
  std::vector<double> token_vector(const std::string& token) const;

  std::size_t dim_ = 0;
  bool internal_ = true;
  std::uint64_t seed_ = 0;
  std::unordered_map<std::string, std::vector<double>> table_;
};

std::vector<std::vector<double>> embed_questions(const std::vector<std::vector<std::string>>& questions,
                                                 const QuestionEmbedder& embedder);

// ---- k-means --------------------------------------------------------------------------------

using Points = std::vector<std::vector<double>>;

struct KMeansResult {
  Points centroids;
  std::vector<std::size_t> assignment;
  double wcss = 0.0;
  std::vector<double> wcss_history;  // per Lloyd iteration of the winning run
  std::size_t iterations = 0;
};

double squared_distance(const std::vector<double>& a, const std::vector<double>& b);
double wcss(const Points& points, const Points& centroids, const std::vector<std::size_t>& assignment);

Points kmeans_plus_plus(const Points& points, std::size_t k, std::mt19937_64& rng);
// Lloyd iterations from `centroids` until the assignment stops changing or
// `max_iter`; an empty cluster is moved onto the point farthest from its
// assigned centroid.
KMeansResult lloyd(const Points& points, Points centroids, std::size_t max_iter);
// Best of `restarts` seeded runs by WCSS. The first run seeds from
// std::mt19937_64(seed); later runs continue the same generator.
KMeansResult kmeans(const Points& points, std::size_t k, std::uint64_t seed, std::size_t restarts,
                    std::size_t max_iter);

// Centroids of level-`level` question embeddings, k = n_pi. Levels with fewer
// than n_pi questions are padded with perturbed duplicates.
std::vector<std::vector<double>> init_template_bank(const std::vector<TrainingExample>& examples,
                                                    ComplexityLabel level, std::size_t n_pi,
                                                    const QuestionEmbedder& embedder,
                                                    const TrainConfig& config);
// Initializes both banks of `model`.
void init_template_banks(model::CcqgModel& model, const std::vector<TrainingExample>& examples,
                         const TrainConfig& config);
QuestionEmbedder make_embedder(const TrainConfig& config, std::size_t dim);

// ---- hard EM ------------------------------------------------------------------------------------

struct EpochStats {
  std::size_t epoch = 0;
  double train_nll = 0.0;  // mean noise-free NLL of the selected experts
  double dev_nll = 0.0;
  std::vector<std::size_t> selection_counts;  // one per expert (n_z entries)
};

struct TrainReport {
  std::vector<EpochStats> epochs;
  std::size_t best_epoch = 0;
  double best_dev_nll = 0.0;
  bool converged = false;
};

// Lowest loss, ties to the lowest index.
std::size_t select_expert(const std::vector<double>& losses);

class HardEmTrainer {
 public:
  HardEmTrainer(model::CcqgModel& model, TrainConfig config);

  // One pass over `examples` in the given order.
  EpochStats epoch(const std::vector<TrainingExample>& examples);
  // Mean of -mixture_log_prob.
  double dev_nll(const std::vector<TrainingExample>& examples) const;
  // Trains until the dev NLL changes by less than convergence_eps or
  // max_epochs; leaves the best-dev parameters in the model. An empty dev set
  // falls back to the training set.
  TrainReport train(const std::vector<TrainingExample>& train_set,
                    const std::vector<TrainingExample>& dev_set);

 private:
  std::vector<nn::Tensor> trainable() const;

  model::CcqgModel& model_;
  TrainConfig config_;
  nn::AdamState adam_;
  std::mt19937_64 rng_;
  std::size_t epochs_run_ = 0;
};

std::string format_report_tsv(const TrainReport& report);

}  // namespace ccqg::train
