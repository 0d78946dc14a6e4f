// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Automatic question-generation metrics over whitespace token lists.

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "common/label.hpp"

namespace ccqg::eval {

using Tokens = std::vector<std::string>;

inline constexpr double kBleuEpsilon = 1e-9;

struct NgramCounts {
  std::array<double, 4> matches{};
  std::array<double, 4> totals{};
  double candidate_length = 0.0;
  double reference_length = 0.0;
};

NgramCounts ngram_counts(const Tokens& candidate, const Tokens& reference);
double bleu_from_counts(const NgramCounts& counts);

// Corpus BLEU-4, one reference per candidate. Orders with no matches use
// (0 + eps) / (total + eps).
double bleu4(const std::vector<Tokens>& candidates, const std::vector<Tokens>& references);
double sentence_bleu4(const Tokens& candidate, const Tokens& reference);

std::size_t lcs_length(const Tokens& a, const Tokens& b);
double rouge_l(const Tokens& candidate, const Tokens& reference);
// Mean over pairs.
double rouge_l_corpus(const std::vector<Tokens>& candidates, const std::vector<Tokens>& references);

struct ConsistencyReport {
  double f1_simple = 0.0;
  double f1_complex = 0.0;
  double macro_f1 = 0.0;
  std::size_t count = 0;
};

// Per-class F1 of predicted levels against the requested ones.
ConsistencyReport consistency_f1(const std::vector<ComplexityLabel>& requested,
                                 const std::vector<ComplexityLabel>& predicted);
using QuestionLabeler = std::function<ComplexityLabel(const std::string& question)>;
ConsistencyReport consistency_f1(const std::vector<std::string>& questions,
                                 const std::vector<ComplexityLabel>& requested,
                                 const QuestionLabeler& labeler);

// Mean of 1 - sentence BLEU-4 over instance-aligned pairs.
double pairwise_diversity(const std::vector<Tokens>& simple, const std::vector<Tokens>& complex);

struct EvalReport {
  double bleu4 = 0.0;
  double rouge_l = 0.0;
  ConsistencyReport consistency;
  double diversity = 0.0;
  std::size_t references = 0;
  std::size_t pairs = 0;

  std::string to_json() const;
  static std::string tsv_header();
  std::string tsv_row() const;
};

}  // namespace ccqg::eval
