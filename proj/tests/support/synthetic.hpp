// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Small synthetic QA corpora with known question patterns.

#pragma once

#include <string>
#include <vector>

#include "data/dataset.hpp"

namespace ccqg::testing {

// 32 instances; the answer is a color named in the passage.
inline std::vector<data::QAInstance> overfit_corpus() {
  const std::vector<std::string> nouns{"tower", "bridge", "castle", "church",
                                       "statue", "market", "library", "harbor"};
  const std::vector<std::string> places{"paris", "rome", "vienna", "madrid"};
  const std::vector<std::string> colors{"red", "blue", "green", "white", "gray"};
  std::vector<data::QAInstance> out;
  std::size_t i = 0;
  for (const auto& noun : nouns) {
    for (const auto& place : places) {
      const auto& color = colors[i % colors.size()];
      data::QAInstance q;
      q.id = "overfit-" + std::to_string(i);
      q.passage = "the " + noun + " in " + place + " is " + color + " and very old .";
      q.answer_text = color;
      const std::size_t at = 5;
      q.answer_span = data::TokenRange{at, at + 1};
      if (i % 2 == 0) {
        q.question = "what color is the " + noun + " in " + place + " ?";
        q.gold_complexity = ComplexityLabel::Simple;
      } else {
        q.question = "what color is the old " + noun + " that stands in " + place + " ?";
        q.gold_complexity = ComplexityLabel::Complex;
      }
      out.push_back(q);
      ++i;
    }
  }
  return out;
}

struct ControlItem {
  std::string subject;
  std::string clause;
  std::string answer;
};

// 50 passages, each once per level: "what is X ?" and "what is the X that <clause> ?".
inline std::vector<ControlItem> control_items() {
  const std::vector<std::string> subjects{"river", "engine", "festival", "planet", "garden",
                                          "tunnel", "museum", "forest", "island", "temple"};
  const std::vector<std::string> clauses{"flows north", "was built early", "opens in may",
                                         "has two moons", "grows tall trees"};
  const std::vector<std::string> answers{"alpha", "bravo", "delta", "echo", "kilo",
                                         "lima", "oscar", "sierra", "tango", "zulu"};
  std::vector<ControlItem> out;
  for (std::size_t s = 0; s < subjects.size(); ++s) {
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      out.push_back({subjects[s], clauses[c], answers[(s + 3 * c) % answers.size()]});
    }
  }
  return out;
}

inline std::string control_passage(const ControlItem& item) {
  return "the " + item.subject + " " + item.clause + " . its name is " + item.answer + " .";
}

inline std::vector<data::QAInstance> control_corpus() {
  std::vector<data::QAInstance> out;
  std::size_t i = 0;
  for (const auto& item : control_items()) {
    for (ComplexityLabel level : {ComplexityLabel::Simple, ComplexityLabel::Complex}) {
      data::QAInstance q;
      q.id = "control-" + std::to_string(i++);
      q.passage = control_passage(item);
      q.answer_text = item.answer;
      q.answer_span = data::find_answer_span(q.passage, q.answer_text);
      q.question = level == ComplexityLabel::Simple
                       ? "what is " + item.subject + " ?"
                       : "what is the " + item.subject + " that " + item.clause + " ?";
      q.gold_complexity = level;
      out.push_back(q);
    }
  }
  return out;
}

inline ComplexityLabel pattern_label(const std::string& question) {
  return question.find(" that ") != std::string::npos ? ComplexityLabel::Complex : ComplexityLabel::Simple;
}

}  // namespace ccqg::testing
