// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace ccqg {

enum class ComplexityLabel { Simple = 0, Complex = 1 };

inline constexpr std::size_t kNumLabels = 2;

inline std::size_t label_index(ComplexityLabel label) {
  return static_cast<std::size_t>(label);
}

inline std::string_view label_name(ComplexityLabel label) {
  return label == ComplexityLabel::Simple ? "simple" : "complex";
}

// Accepts "simple"/"complex" (and the HotpotQA "easy"/"hard" spellings).
inline std::optional<ComplexityLabel> parse_label(std::string_view text) {
  if (text == "simple" || text == "easy") return ComplexityLabel::Simple;
  if (text == "complex" || text == "hard") return ComplexityLabel::Complex;
  return std::nullopt;
}

}  // namespace ccqg
