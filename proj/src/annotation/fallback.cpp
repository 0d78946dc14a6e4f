// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>

#include "annotation/annotation.hpp"
#include "common/error.hpp"
#include "common/text.hpp"

namespace ccqg::annotation {

namespace {

struct RawToken {
  std::string form;
  std::size_t begin = 0;
  std::size_t end = 0;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Alphanumerics and UTF-8 continuation/lead bytes form words.
bool is_word(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80;
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<RawToken> split_tokens(std::string_view raw) {
  std::vector<RawToken> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (is_space(raw[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_word(raw[i])) {
      while (i < raw.size()) {
        if (is_word(raw[i])) {
          ++i;
        } else if ((raw[i] == '.' || raw[i] == ',') && i > start && is_digit(raw[i - 1]) &&
                   i + 1 < raw.size() && is_digit(raw[i + 1])) {
          ++i;  // 6.213, 1,000
        } else {
          break;
        }
      }
    } else {
      ++i;
    }
    out.push_back({std::string(raw.substr(start, i - start)), start, i});
  }
  return out;
}

bool capitalized(const std::string& form) {
  return !form.empty() && std::isupper(static_cast<unsigned char>(form.front())) != 0;
}

void tag_entities(Sentence& s) {
  auto& tokens = s.tokens;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!capitalized(tokens[i].form)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < tokens.size() && capitalized(tokens[j].form)) ++j;
    if (i != 0) {
      for (std::size_t k = i; k < j; ++k) tokens[k].entity = k == i ? "B-ENT" : "I-ENT";
    }
    i = j;
  }
}

}  // namespace

AnnotatedDocument tokenize_fallback(std::string_view raw, std::string doc_id) {
  if (trim(raw).empty()) throw DataError("tokenize_fallback: empty input");
  auto raw_tokens = split_tokens(raw);

  AnnotatedDocument doc;
  doc.doc_id = std::move(doc_id);
  doc.source_text = std::string(raw);

  std::vector<RawToken> pending;
  auto flush = [&] {
    if (pending.empty()) return;
    Sentence s;
    s.char_span = {pending.front().begin, pending.back().end};
    for (std::size_t k = 0; k < pending.size(); ++k) {
      Token t;
      t.index = k + 1;
      t.form = pending[k].form;
      t.lemma = to_lower(t.form);
      t.upos = "X";
      t.head = k == 0 ? 0 : 1;
      t.deprel = "dep";
      s.tokens.push_back(std::move(t));
    }
    tag_entities(s);
    doc.sentences.push_back(std::move(s));
    pending.clear();
  };

  for (auto& tok : raw_tokens) {
    const bool terminal = tok.form == "." || tok.form == "?" || tok.form == "!";
    const bool at_boundary = tok.end == raw.size() || is_space(raw[tok.end]);
    pending.push_back(std::move(tok));
    if (terminal && at_boundary) flush();
  }
  flush();
  return doc;
}

}  // namespace ccqg::annotation
