// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Training-free question complexity estimator. Five raw features are computed
// from the question, the passage and the answer position, min-max normalized
// against a fitted corpus, averaged into a score in [0, 1] and thresholded.

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "annotation/annotation.hpp"
#include "common/label.hpp"
#include "data/qa_instance.hpp"

namespace ccqg::estimator {

inline constexpr std::size_t kNumFeatures = 5;
inline constexpr double kCoherenceFloor = 1e-6;
inline constexpr double kDefaultLambda = 0.682;

using FeatureVector = std::array<double, kNumFeatures>;

struct ComplexityFeatures {
  double clauses = 1.0;           // clause count of the question
  double modifiers = 0.0;         // modifier-relation count of the question
  double topic_coherence = 0.0;   // inverse mean JS divergence between passage sentences
  double entity_frequency = 1.0;  // inverse mean passage frequency of question entities
  double entity_distance = 0.0;   // mean token gap between question entities and the answer

  FeatureVector as_array() const {
    return {clauses, modifiers, topic_coherence, entity_frequency, entity_distance};
  }
  static ComplexityFeatures from_array(const FeatureVector& v) {
    return {v[0], v[1], v[2], v[3], v[4]};
  }
};

// `Inverse` uses 1 / d_JS as written; `Direct` uses d_JS itself, so that
// incoherent passages raise the score.
enum class F3Mode { Inverse, Direct };

struct EstimatorOptions {
  double alpha = annotation::kDefaultTopicAlpha;
  F3Mode f3_mode = F3Mode::Inverse;
};

struct FeatureNormalizer {
  FeatureVector min{};
  FeatureVector max{};
  double lambda = kDefaultLambda;
};

struct ConfusionMatrix {
  std::size_t ts_ps = 0;  // true simple, predicted simple
  std::size_t ts_pc = 0;
  std::size_t tc_ps = 0;
  std::size_t tc_pc = 0;
  std::size_t total() const { return ts_ps + ts_pc + tc_ps + tc_pc; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct EstimatorEvaluation {
  ConfusionMatrix confusion;
  double f1_simple = 0.0;
  double f1_complex = 0.0;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
};

struct Calibration {
  double lambda = 0.0;
  double macro_f1 = 0.0;
};

// ---- features ----------------------------------------------------------------------

// Base-2 Jensen-Shannon divergence, in [0, 1].
double js_divergence(std::span<const double> p, std::span<const double> q);

double feature_topic_coherence(const annotation::AnnotatedDocument& passage,
                               const EstimatorOptions& options = {});
double feature_entity_frequency(const annotation::AnnotatedDocument& question,
                                const annotation::AnnotatedDocument& passage);
// `answer` indexes the passage's flattened token sequence.
double feature_entity_answer_distance(const annotation::AnnotatedDocument& question,
                                      const annotation::AnnotatedDocument& passage,
                                      data::TokenRange answer);

ComplexityFeatures compute_raw_features(const annotation::AnnotatedDocument& question,
                                        const annotation::AnnotatedDocument& passage,
                                        data::TokenRange answer,
                                        const EstimatorOptions& options = {});
// Looks up "<id>#question" and "<id>#passage"; throws ccqg::DataError naming
// a missing document or an answer that cannot be located.
ComplexityFeatures compute_raw_features(const data::QAInstance& instance,
                                        const annotation::AnnotationIndex& annotations,
                                        const EstimatorOptions& options = {});

// First token-aligned, case- and whitespace-insensitive occurrence of
// `answer_text` in the passage's tokens.
std::optional<data::TokenRange> locate_answer(const annotation::AnnotatedDocument& passage,
                                              std::string_view answer_text);

// ---- scoring -------------------------------------------------------------------------

FeatureNormalizer fit_normalizer(std::span<const ComplexityFeatures> features,
                                 double lambda = kDefaultLambda);
FeatureVector normalize(const ComplexityFeatures& features, const FeatureNormalizer& normalizer);
double cpx_score(const FeatureVector& normalized);
ComplexityLabel classify(double score, double lambda);

struct Estimate {
  ComplexityFeatures raw;
  FeatureVector normalized{};
  double score = 0.0;
  ComplexityLabel label = ComplexityLabel::Simple;
};
Estimate estimate(const ComplexityFeatures& raw, const FeatureNormalizer& normalizer);

// Grid search over lambda in {0.00, 0.01, ..., 1.00} maximizing macro-F1;
// ties go to the smallest lambda.
Calibration calibrate_threshold(std::span<const double> scores,
                                std::span<const ComplexityLabel> gold);

EstimatorEvaluation evaluate_estimator(std::span<const ComplexityLabel> predicted,
                                       std::span<const ComplexityLabel> gold);
EstimatorEvaluation evaluate_confusion(const ConfusionMatrix& confusion);

// ---- persistence ------------------------------------------------------------------------

// Text file: "lambda <v>" then one "<feature> <min> <max>" line per feature.
std::string serialize_normalizer(const FeatureNormalizer& normalizer);
FeatureNormalizer parse_normalizer(const std::string& text);
void save_normalizer(const FeatureNormalizer& normalizer, const std::filesystem::path& path);
FeatureNormalizer load_normalizer(const std::filesystem::path& path);

std::string_view feature_name(std::size_t index);
F3Mode parse_f3_mode(std::string_view text);

}  // namespace ccqg::estimator
