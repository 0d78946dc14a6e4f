// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "common/text.hpp"

#include <cctype>

namespace ccqg {

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == delim) {
      out.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool starts_with(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

std::vector<std::string> model_tokens(std::string_view text) {
  auto is_punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
  std::vector<std::string> out;
  for (const auto& word : split_whitespace(to_lower(text))) {
    std::size_t begin = 0;
    std::size_t end = word.size();
    while (begin < end && is_punct(word[begin])) ++begin;
    if (begin == end) {
      for (char c : word) out.emplace_back(1, c);
      continue;
    }
    while (end > begin && is_punct(word[end - 1])) --end;
    for (std::size_t i = 0; i < begin; ++i) out.emplace_back(1, word[i]);
    out.push_back(word.substr(begin, end - begin));
    for (std::size_t i = end; i < word.size(); ++i) out.emplace_back(1, word[i]);
  }
  return out;
}

}  // namespace ccqg
