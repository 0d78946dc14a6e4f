// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "common/label.hpp"

namespace ccqg::data {

// Half-open token range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const TokenRange&) const = default;
};

struct QAInstance {
  std::string id;
  std::string passage;
  std::string question;
  std::string answer_text;
  // Over model_tokens(passage); absent when the answer
  // could not be located.
  std::optional<TokenRange> answer_span;
  std::optional<ComplexityLabel> gold_complexity;
  std::optional<ComplexityLabel> predicted_complexity;

  // The label used to condition training: predicted first, then gold.
  std::optional<ComplexityLabel> training_label() const {
    return predicted_complexity ? predicted_complexity : gold_complexity;
  }
};

inline std::string passage_doc_id(const std::string& instance_id) { return instance_id + "#passage"; }
inline std::string question_doc_id(const std::string& instance_id) { return instance_id + "#question"; }

}  // namespace ccqg::data
