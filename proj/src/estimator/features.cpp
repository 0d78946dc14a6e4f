// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include "common/error.hpp"
#include "common/text.hpp"
#include "estimator/estimator.hpp"

namespace ccqg::estimator {

using annotation::AnnotatedDocument;

double js_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw UsageError("js_divergence: length mismatch (" + std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()) + ")");
  }
  auto check = [](std::span<const double> d, const char* name) {
    double total = 0.0;
    for (double v : d) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw UsageError(std::string("js_divergence: ") + name + " has a negative or non-finite entry");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw UsageError(std::string("js_divergence: ") + name + " does not sum to 1");
    }
  };
  check(p, "p");
  check(q, "q");
  double js = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) js += 0.5 * p[i] * std::log2(p[i] / m);
    if (q[i] > 0.0) js += 0.5 * q[i] * std::log2(q[i] / m);
  }
  return std::clamp(js, 0.0, 1.0);
}

double feature_topic_coherence(const AnnotatedDocument& passage, const EstimatorOptions& options) {
  const std::size_t n = passage.sentences.size();
  const double at_zero = options.f3_mode == F3Mode::Inverse ? 1.0 / kCoherenceFloor : 0.0;
  if (n < 2) return at_zero;

  std::set<std::string> lemmas;
  for (const auto& s : passage.sentences)
    for (auto& l : annotation::content_lemmas(s)) lemmas.insert(std::move(l));
  if (lemmas.empty()) return at_zero;
  const std::vector<std::string> vocab(lemmas.begin(), lemmas.end());

  std::vector<std::vector<double>> topics;
  topics.reserve(n);
  for (const auto& s : passage.sentences)
    topics.push_back(annotation::unigram_topic(s, vocab, options.alpha));

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) total += 2.0 * js_divergence(topics[i], topics[j]);
  const double mean_js = total / static_cast<double>(n * (n - 1));

  if (options.f3_mode == F3Mode::Direct) return mean_js;
  return 1.0 / std::max(mean_js, kCoherenceFloor);
}

double feature_entity_frequency(const AnnotatedDocument& question, const AnnotatedDocument& passage) {
  const auto q = annotation::entity_mentions(question);
  const auto p = annotation::entity_mentions(passage);
  const double passage_total = static_cast<double>(p.total_mentions);
  if (p.total_mentions == 0) return 1.0;

  double sum = 0.0;
  std::size_t shared = 0;
  for (const auto& [entity, _] : q.mentions) {
    auto it = p.mentions.find(entity);
    if (it == p.mentions.end()) continue;
    sum += static_cast<double>(it->second.size()) / passage_total;
    ++shared;
  }
  if (shared == 0) return passage_total + 1.0;
  return 1.0 / (sum / static_cast<double>(shared));
}

double feature_entity_answer_distance(const AnnotatedDocument& question,
                                      const AnnotatedDocument& passage, data::TokenRange answer) {
  const std::size_t total_tokens = passage.token_count();
  if (answer.begin >= answer.end || answer.end > total_tokens) {
    throw DataError("invalid answer span [" + std::to_string(answer.begin) + ", " +
                    std::to_string(answer.end) + ") for passage '" + passage.doc_id + "' of " +
                    std::to_string(total_tokens) + " tokens");
  }
  const auto offsets = passage.sentence_offsets();
  const auto q = annotation::entity_mentions(question);
  const auto p = annotation::entity_mentions(passage);

  auto gap = [&](std::size_t pos) -> std::size_t {
    if (pos >= answer.begin && pos < answer.end) return 0;
    if (pos < answer.begin) return answer.begin - pos - 1;
    return pos - answer.end;
  };

  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& [entity, _] : q.mentions) {
    auto it = p.mentions.find(entity);
    if (it == p.mentions.end()) continue;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& m : it->second) best = std::min(best, gap(offsets[m.sentence] + m.token));
    sum += static_cast<double>(best);
    ++counted;
  }
  if (counted == 0) return static_cast<double>(total_tokens);
  return sum / static_cast<double>(counted);
}

std::optional<data::TokenRange> locate_answer(const AnnotatedDocument& passage,
                                              std::string_view answer_text) {
  std::string needle;
  for (char c : to_lower(answer_text))
    if (!std::isspace(static_cast<unsigned char>(c))) needle += c;
  if (needle.empty()) return std::nullopt;

  std::string flat;
  std::vector<std::size_t> starts;  // char offset where each token begins
  for (const auto& s : passage.sentences)
    for (const auto& t : s.tokens) {
      starts.push_back(flat.size());
      for (char c : to_lower(t.form))
        if (!std::isspace(static_cast<unsigned char>(c))) flat += c;
    }
  starts.push_back(flat.size());

  for (std::size_t b = 0; b + 1 < starts.size(); ++b) {
    if (flat.compare(starts[b], needle.size(), needle) != 0) continue;
    const std::size_t stop = starts[b] + needle.size();
    auto it = std::find(starts.begin() + static_cast<std::ptrdiff_t>(b) + 1, starts.end(), stop);
    if (it == starts.end()) continue;
    return data::TokenRange{b, static_cast<std::size_t>(it - starts.begin())};
  }
  return std::nullopt;
}

ComplexityFeatures compute_raw_features(const AnnotatedDocument& question,
                                        const AnnotatedDocument& passage, data::TokenRange answer,
                                        const EstimatorOptions& options) {
  ComplexityFeatures f;
  std::size_t clauses = 0;
  std::size_t modifiers = 0;
  for (const auto& s : question.sentences) {
    clauses += annotation::clause_count(s);
    modifiers += annotation::mod_relation_count(s);
  }
  f.clauses = static_cast<double>(std::max<std::size_t>(clauses, 1));
  f.modifiers = static_cast<double>(modifiers);
  f.topic_coherence = feature_topic_coherence(passage, options);
  f.entity_frequency = feature_entity_frequency(question, passage);
  f.entity_distance = feature_entity_answer_distance(question, passage, answer);
  return f;
}

ComplexityFeatures compute_raw_features(const data::QAInstance& instance,
                                        const annotation::AnnotationIndex& annotations,
                                        const EstimatorOptions& options) {
  const std::string qid = data::question_doc_id(instance.id);
  const std::string pid = data::passage_doc_id(instance.id);
  auto q = annotations.find(qid);
  if (q == annotations.end()) throw DataError("missing annotation for document '" + qid + "'");
  auto p = annotations.find(pid);
  if (p == annotations.end()) throw DataError("missing annotation for document '" + pid + "'");
  auto range = locate_answer(p->second, instance.answer_text);
  if (!range) {
    throw DataError("answer '" + instance.answer_text + "' not found in document '" + pid + "'");
  }
  return compute_raw_features(q->second, p->second, *range, options);
}

}  // namespace ccqg::estimator
