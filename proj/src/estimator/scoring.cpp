// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "common/text.hpp"
#include "estimator/estimator.hpp"

namespace ccqg::estimator {

namespace {

constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "clauses", "modifiers", "topic_coherence", "entity_frequency", "entity_distance"};

double f1(std::size_t tp, std::size_t predicted, std::size_t actual) {
  const double precision = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
  const double recall = actual ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

std::string_view feature_name(std::size_t index) { return kFeatureNames.at(index); }

F3Mode parse_f3_mode(std::string_view text) {
  if (text == "inverse") return F3Mode::Inverse;
  if (text == "direct") return F3Mode::Direct;
  throw UsageError("f3_mode must be 'inverse' or 'direct', got '" + std::string(text) + "'");
}

FeatureNormalizer fit_normalizer(std::span<const ComplexityFeatures> features, double lambda) {
  if (features.empty()) throw DataError("fit_normalizer: empty feature list");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("fit_normalizer: lambda outside [0, 1]");
  FeatureNormalizer n;
  n.min = features.front().as_array();
  n.max = n.min;
  for (const auto& f : features) {
    const auto v = f.as_array();
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      n.min[i] = std::min(n.min[i], v[i]);
      n.max[i] = std::max(n.max[i], v[i]);
    }
  }
  n.lambda = lambda;
  return n;
}

FeatureVector normalize(const ComplexityFeatures& features, const FeatureNormalizer& normalizer) {
  const auto v = features.as_array();
  FeatureVector out{};
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    const double range = normalizer.max[i] - normalizer.min[i];
    out[i] = range > 0.0 ? std::clamp((v[i] - normalizer.min[i]) / range, 0.0, 1.0) : 0.0;
  }
  return out;
}

double cpx_score(const FeatureVector& normalized) {
  double total = 0.0;
  for (double v : normalized) total += v;
  return total / static_cast<double>(kNumFeatures);
}

ComplexityLabel classify(double score, double lambda) {
  return score > lambda ? ComplexityLabel::Complex : ComplexityLabel::Simple;
}

Estimate estimate(const ComplexityFeatures& raw, const FeatureNormalizer& normalizer) {
  Estimate e;
  e.raw = raw;
  e.normalized = normalize(raw, normalizer);
  e.score = cpx_score(e.normalized);
  e.label = classify(e.score, normalizer.lambda);
  return e;
}

Calibration calibrate_threshold(std::span<const double> scores,
                                std::span<const ComplexityLabel> gold) {
  if (scores.size() != gold.size()) {
    throw UsageError("calibrate_threshold: " + std::to_string(scores.size()) + " scores for " +
                     std::to_string(gold.size()) + " labels");
  }
  const bool has_simple = std::find(gold.begin(), gold.end(), ComplexityLabel::Simple) != gold.end();
  const bool has_complex = std::find(gold.begin(), gold.end(), ComplexityLabel::Complex) != gold.end();
  if (!has_simple || !has_complex) {
    throw DataError("calibrate_threshold: gold labels must contain both classes");
  }
  Calibration best{0.0, -1.0};
  std::vector<ComplexityLabel> predicted(scores.size());
  for (int step = 0; step <= 100; ++step) {
    const double lambda = step / 100.0;
    for (std::size_t i = 0; i < scores.size(); ++i) predicted[i] = classify(scores[i], lambda);
    const double macro = evaluate_estimator(predicted, gold).macro_f1;
    if (macro > best.macro_f1) best = {lambda, macro};
  }
  return best;
}

EstimatorEvaluation evaluate_confusion(const ConfusionMatrix& c) {
  EstimatorEvaluation e;
  e.confusion = c;
  const std::size_t true_simple = c.ts_ps + c.ts_pc;
  const std::size_t true_complex = c.tc_ps + c.tc_pc;
  e.f1_simple = f1(c.ts_ps, c.ts_ps + c.tc_ps, true_simple);
  e.f1_complex = f1(c.tc_pc, c.tc_pc + c.ts_pc, true_complex);
  e.macro_f1 = 0.5 * (e.f1_simple + e.f1_complex);
  const double total = static_cast<double>(c.total());
  e.weighted_f1 = total > 0.0 ? (e.f1_simple * static_cast<double>(true_simple) +
                                 e.f1_complex * static_cast<double>(true_complex)) /
                                    total
                              : 0.0;
  return e;
}

EstimatorEvaluation evaluate_estimator(std::span<const ComplexityLabel> predicted,
                                       std::span<const ComplexityLabel> gold) {
  if (predicted.size() != gold.size()) {
    throw UsageError("evaluate_estimator: " + std::to_string(predicted.size()) +
                     " predictions for " + std::to_string(gold.size()) + " gold labels");
  }
  if (predicted.empty()) throw UsageError("evaluate_estimator: no items");
  ConfusionMatrix c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool ts = gold[i] == ComplexityLabel::Simple;
    const bool ps = predicted[i] == ComplexityLabel::Simple;
    if (ts && ps) ++c.ts_ps;
    else if (ts) ++c.ts_pc;
    else if (ps) ++c.tc_ps;
    else ++c.tc_pc;
  }
  return evaluate_confusion(c);
}

std::string serialize_normalizer(const FeatureNormalizer& n) {
  char buf[128];
  std::string out = "# ccqg complexity normalizer\n";
  std::snprintf(buf, sizeof(buf), "lambda %.17g\n", n.lambda);
  out += buf;
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    std::snprintf(buf, sizeof(buf), "%s %.17g %.17g\n", std::string(kFeatureNames[i]).c_str(),
                  n.min[i], n.max[i]);
    out += buf;
  }
  return out;
}

FeatureNormalizer parse_normalizer(const std::string& text) {
  FeatureNormalizer n;
  std::array<bool, kNumFeatures> seen{};
  bool have_lambda = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "lambda") {
      if (!(fields >> n.lambda)) throw DataError("normalizer: bad lambda line");
      have_lambda = true;
      continue;
    }
    auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), key);
    if (it == kFeatureNames.end()) throw DataError("normalizer: unknown key '" + key + "'");
    const auto i = static_cast<std::size_t>(it - kFeatureNames.begin());
    if (!(fields >> n.min[i] >> n.max[i])) throw DataError("normalizer: bad line for '" + key + "'");
    seen[i] = true;
  }
  if (!have_lambda) throw DataError("normalizer: missing lambda");
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    if (!seen[i]) throw DataError("normalizer: missing feature '" + std::string(kFeatureNames[i]) + "'");
    if (n.min[i] > n.max[i]) throw DataError("normalizer: min > max for '" + std::string(kFeatureNames[i]) + "'");
  }
  if (!(n.lambda >= 0.0 && n.lambda <= 1.0)) throw DataError("normalizer: lambda outside [0, 1]");
  return n;
}

void save_normalizer(const FeatureNormalizer& normalizer, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write normalizer " + path.string());
  out << serialize_normalizer(normalizer);
}

FeatureNormalizer load_normalizer(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read normalizer " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_normalizer(ss.str());
}

}  // namespace ccqg::estimator
