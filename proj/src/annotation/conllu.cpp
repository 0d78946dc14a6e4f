// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <optional>
#include <set>

#include "annotation/annotation.hpp"
#include "common/error.hpp"
#include "common/text.hpp"

namespace ccqg::annotation {

namespace {

std::optional<std::size_t> parse_index(std::string_view text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw DataError("conllu line " + std::to_string(line) + ": " + message);
}

void validate_sentence(const Sentence& s, const std::string& doc_id, std::size_t sentence_index) {
  const std::string where = "document '" + doc_id + "' sentence " + std::to_string(sentence_index + 1);
  if (s.tokens.empty()) throw DataError(where + ": empty sentence");
  std::size_t roots = 0;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const Token& t = s.tokens[i];
    if (t.index != i + 1) {
      throw DataError(where + ": token ids must be 1..n contiguous, found " +
                      std::to_string(t.index) + " at position " + std::to_string(i + 1));
    }
    if (t.head > s.tokens.size()) {
      throw DataError(where + ": head " + std::to_string(t.head) + " exceeds sentence length");
    }
    if (t.deprel.empty()) throw DataError(where + ": empty deprel at token " + std::to_string(t.index));
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw DataError(where + ": expected exactly one root, found " + std::to_string(roots));
  }
}

std::string single_line(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  return out;
}

}  // namespace

std::size_t AnnotatedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::vector<std::size_t> AnnotatedDocument::sentence_offsets() const {
  std::vector<std::size_t> offsets;
  std::size_t n = 0;
  for (const auto& s : sentences) {
    offsets.push_back(n);
    n += s.tokens.size();
  }
  return offsets;
}

void validate(const AnnotatedDocument& doc) {
  std::size_t last_end = 0;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    const auto& s = doc.sentences[i];
    validate_sentence(s, doc.doc_id, i);
    if (s.char_span.first < last_end || s.char_span.second < s.char_span.first ||
        s.char_span.second > doc.source_text.size()) {
      throw DataError("document '" + doc.doc_id + "': sentence spans overlap or exceed the text");
    }
    last_end = s.char_span.second;
  }
}

std::vector<AnnotatedDocument> parse_conllu(std::string_view text) {
  std::vector<AnnotatedDocument> docs;
  std::set<std::string> seen;
  Sentence current;
  std::string current_text;
  std::size_t sentence_line = 0;

  auto finish_sentence = [&] {
    if (current.tokens.empty()) {
      current_text.clear();
      return;
    }
    AnnotatedDocument& doc = docs.back();
    std::string sentence_text = current_text;
    if (sentence_text.empty()) {
      std::vector<std::string> forms;
      for (const auto& t : current.tokens) forms.push_back(t.form);
      sentence_text = join(forms, " ");
    }
    if (!doc.source_text.empty()) doc.source_text += ' ';
    current.char_span = {doc.source_text.size(), doc.source_text.size() + sentence_text.size()};
    doc.source_text += sentence_text;
    try {
      validate_sentence(current, doc.doc_id, doc.sentences.size());
    } catch (const DataError& e) {
      fail(sentence_line, e.what());
    }
    doc.sentences.push_back(std::move(current));
    current = Sentence{};
    current_text.clear();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (trim(line).empty()) {
      if (!docs.empty()) finish_sentence();
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') {
      std::string body = trim(line.substr(1));
      auto eq = body.find('=');
      std::string key = eq == std::string::npos ? body : trim(std::string_view(body).substr(0, eq));
      std::string value = eq == std::string::npos ? "" : trim(std::string_view(body).substr(eq + 1));
      if (key == "doc_id") {
        if (!docs.empty()) finish_sentence();
        if (value.empty()) fail(line_no, "empty doc_id");
        if (!seen.insert(value).second) fail(line_no, "duplicate doc_id '" + value + "'");
        docs.push_back(AnnotatedDocument{value, {}, {}});
      } else if (key == "text") {
        current_text = value;
      }
      continue;
    }

    auto columns = split(line, '\t');
    if (columns.size() != 10) {
      fail(line_no, "expected 10 tab-separated columns, found " + std::to_string(columns.size()));
    }
    if (docs.empty()) fail(line_no, "token line before any '# doc_id' header");
    const std::string& id = columns[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) continue;
    auto index = parse_index(id);
    if (!index || *index == 0) fail(line_no, "invalid token id '" + id + "'");
    auto head = parse_index(columns[6]);
    if (!head) fail(line_no, "non-integer head '" + columns[6] + "'");
    if (current.tokens.empty()) sentence_line = line_no;

    Token token;
    token.index = *index;
    token.form = columns[1];
    token.lemma = columns[2];
    token.upos = columns[3];
    token.head = *head;
    token.deprel = columns[7];
    token.entity = "O";
    for (const auto& item : split(columns[9], '|')) {
      if (starts_with(item, "NER=")) token.entity = item.substr(4);
    }
    current.tokens.push_back(std::move(token));
    if (end == text.size()) break;
  }
  if (!docs.empty()) finish_sentence();
  return docs;
}

std::string write_conllu(const std::vector<AnnotatedDocument>& documents) {
  std::string out;
  for (const auto& doc : documents) {
    out += "# doc_id = " + doc.doc_id + "\n";
    for (const auto& s : doc.sentences) {
      std::string_view text = doc.source_text;
      if (s.char_span.second <= text.size() && s.char_span.first <= s.char_span.second) {
        out += "# text = " +
               single_line(text.substr(s.char_span.first, s.char_span.second - s.char_span.first)) +
               "\n";
      }
      for (const auto& t : s.tokens) {
        out += std::to_string(t.index) + '\t' + t.form + '\t' + t.lemma + '\t' + t.upos + "\t_\t_\t" +
               std::to_string(t.head) + '\t' + t.deprel + "\t_\t" +
               (t.entity == "O" ? std::string("_") : "NER=" + t.entity) + "\n";
      }
      out += "\n";
    }
  }
  return out;
}

AnnotationIndex index_documents(std::vector<AnnotatedDocument> documents) {
  AnnotationIndex index;
  for (auto& doc : documents) {
    std::string id = doc.doc_id;
    if (!index.emplace(id, std::move(doc)).second) throw DataError("duplicate doc_id '" + id + "'");
  }
  return index;
}

}  // namespace ccqg::annotation
