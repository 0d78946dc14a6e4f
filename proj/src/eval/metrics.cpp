// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"

namespace ccqg::eval {

namespace {

std::map<Tokens, std::size_t> ngrams(const Tokens& tokens, std::size_t n) {
  std::map<Tokens, std::size_t> out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++out[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                 tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return out;
}

double f1(double tp, double fp, double fn) {
  const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

}  // namespace

NgramCounts ngram_counts(const Tokens& candidate, const Tokens& reference) {
  NgramCounts c;
  c.candidate_length = static_cast<double>(candidate.size());
  c.reference_length = static_cast<double>(reference.size());
  for (std::size_t n = 1; n <= 4; ++n) {
    auto cand = ngrams(candidate, n);
    auto ref = ngrams(reference, n);
    for (const auto& [gram, count] : cand) {
      c.totals[n - 1] += static_cast<double>(count);
      if (auto it = ref.find(gram); it != ref.end()) {
        c.matches[n - 1] += static_cast<double>(std::min(count, it->second));
      }
    }
  }
  return c;
}

double bleu_from_counts(const NgramCounts& c) {
  if (c.candidate_length == 0.0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < 4; ++n) {
    const double p = c.matches[n] > 0.0 ? c.matches[n] / c.totals[n]
                                        : (c.matches[n] + kBleuEpsilon) / (c.totals[n] + kBleuEpsilon);
    log_sum += std::log(p);
  }
  const double bp = std::exp(std::min(0.0, 1.0 - c.reference_length / c.candidate_length));
  return bp * std::exp(log_sum / 4.0);
}

double bleu4(const std::vector<Tokens>& candidates, const std::vector<Tokens>& references) {
  if (candidates.size() != references.size()) {
    throw UsageError("bleu4: " + std::to_string(candidates.size()) + " candidates vs " +
                     std::to_string(references.size()) + " references");
  }
  NgramCounts total;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto c = ngram_counts(candidates[i], references[i]);
    for (std::size_t n = 0; n < 4; ++n) {
      total.matches[n] += c.matches[n];
      total.totals[n] += c.totals[n];
    }
    total.candidate_length += c.candidate_length;
    total.reference_length += c.reference_length;
  }
  return bleu_from_counts(total);
}

double sentence_bleu4(const Tokens& candidate, const Tokens& reference) {
  return bleu_from_counts(ngram_counts(candidate, reference));
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(const Tokens& candidate, const Tokens& reference) {
  if (candidate.empty() || reference.empty()) throw UsageError("rouge_l: empty token list");
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(candidate.size());
  const double r = lcs / static_cast<double>(reference.size());
  return 2 * p * r / (p + r);
}

double rouge_l_corpus(const std::vector<Tokens>& candidates, const std::vector<Tokens>& references) {
  if (candidates.size() != references.size()) {
    throw UsageError("rouge_l: " + std::to_string(candidates.size()) + " candidates vs " +
                     std::to_string(references.size()) + " references");
  }
  if (candidates.empty()) throw UsageError("rouge_l: no pairs");
  double total = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) total += rouge_l(candidates[i], references[i]);
  return total / static_cast<double>(candidates.size());
}

ConsistencyReport consistency_f1(const std::vector<ComplexityLabel>& requested,
                                 const std::vector<ComplexityLabel>& predicted) {
  if (requested.size() != predicted.size()) {
    throw UsageError("consistency_f1: " + std::to_string(requested.size()) + " targets vs " +
                     std::to_string(predicted.size()) + " predictions");
  }
  std::array<std::array<double, 2>, 2> m{};  // [target][predicted]
  for (std::size_t i = 0; i < requested.size(); ++i) {
    m[label_index(requested[i])][label_index(predicted[i])] += 1.0;
  }
  ConsistencyReport r;
  r.count = requested.size();
  r.f1_simple = f1(m[0][0], m[1][0], m[0][1]);
  r.f1_complex = f1(m[1][1], m[0][1], m[1][0]);
  r.macro_f1 = (r.f1_simple + r.f1_complex) / 2.0;
  return r;
}

ConsistencyReport consistency_f1(const std::vector<std::string>& questions,
                                 const std::vector<ComplexityLabel>& requested,
                                 const QuestionLabeler& labeler) {
  std::vector<ComplexityLabel> predicted;
  predicted.reserve(questions.size());
  for (const auto& q : questions) predicted.push_back(labeler(q));
  return consistency_f1(requested, predicted);
}

double pairwise_diversity(const std::vector<Tokens>& simple, const std::vector<Tokens>& complex) {
  if (simple.size() != complex.size()) {
    throw UsageError("pairwise_diversity: " + std::to_string(simple.size()) + " simple vs " +
                     std::to_string(complex.size()) + " complex outputs");
  }
  if (simple.empty()) throw UsageError("pairwise_diversity: no pairs");
  double total = 0.0;
  for (std::size_t i = 0; i < simple.size(); ++i) total += 1.0 - sentence_bleu4(simple[i], complex[i]);
  return total / static_cast<double>(simple.size());
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["bleu4"] = bleu4;
  j["rouge_l"] = rouge_l;
  j["consistency"] = {{"simple_f1", consistency.f1_simple},
                      {"complex_f1", consistency.f1_complex},
                      {"macro_f1", consistency.macro_f1},
                      {"count", consistency.count}};
  j["diversity"] = diversity;
  j["references"] = references;
  j["pairs"] = pairs;
  return j.dump(2) + "\n";
}

std::string EvalReport::tsv_header() {
  return "bleu4\trouge_l\tsimple_f1\tcomplex_f1\tmacro_f1\tdiversity\treferences\tpairs";
}

std::string EvalReport::tsv_row() const {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << bleu4 << '\t' << rouge_l << '\t' << consistency.f1_simple << '\t'
      << consistency.f1_complex << '\t' << consistency.macro_f1 << '\t' << diversity << '\t'
      << references << '\t' << pairs;
  return out.str();
}

}  // namespace ccqg::eval
