// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Linguistically annotated text: tokens with lemma, POS, dependency head and
// relation, and a BIO entity tag. Documents come either from CoNLL-U files
// (see docs/formats.md) or from the heuristic fallback tokenizer.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ccqg::annotation {

struct Token {
  std::size_t index = 1;  // 1-based within the sentence
  std::string form;
  std::string lemma;
  std::string upos;
  std::size_t head = 0;  // 0 = root
  std::string deprel;
  std::string entity = "O";  // BIO tag, e.g. "B-LOC"
};

struct Sentence {
  std::vector<Token> tokens;
  std::pair<std::size_t, std::size_t> char_span{0, 0};  // [start, end) in source_text
};

struct AnnotatedDocument {
  std::string doc_id;
  std::vector<Sentence> sentences;
  std::string source_text;

  std::size_t token_count() const;
  // Offset of each sentence's first token in the flattened token sequence.
  std::vector<std::size_t> sentence_offsets() const;
};

struct Mention {
  std::size_t sentence = 0;  // 0-based sentence index
  std::size_t token = 0;     // 0-based token position of the span start
  bool operator==(const Mention&) const = default;
};

struct EntityProfile {
  // canonical (lowercased) entity string -> occurrences in document order
  std::map<std::string, std::vector<Mention>> mentions;
  std::size_t total_mentions = 0;
};

// Keyed by doc_id.
using AnnotationIndex = std::unordered_map<std::string, AnnotatedDocument>;

// ---- CoNLL-U -----------------------------------------------------------------

// Parses documents delimited by "# doc_id = <id>" comments. Throws
// ccqg::DataError naming the 1-based line on malformed input.
std::vector<AnnotatedDocument> parse_conllu(std::string_view text);
std::string write_conllu(const std::vector<AnnotatedDocument>& documents);
AnnotationIndex index_documents(std::vector<AnnotatedDocument> documents);

// Checks the Token/Sentence invariants; throws ccqg::DataError.
void validate(const AnnotatedDocument& doc);

// ---- heuristic annotation -----------------------------------------------------

// Degraded annotation when no parser output exists: sentence split on . ? !
// followed by whitespace, punctuation split into separate tokens, lemma =
// lowercased form, upos "X", chain heads (first token root, others -> 1),
// deprel "dep", and "ENT" entities for capitalized runs that do not start a
// sentence.
AnnotatedDocument tokenize_fallback(std::string_view raw, std::string doc_id = "");

// ---- counts consumed by the complexity features ---------------------------------

bool is_clause_relation(std::string_view deprel);
bool is_modifier_relation(std::string_view deprel);
std::size_t clause_count(const Sentence& sentence);
std::size_t mod_relation_count(const Sentence& sentence);

EntityProfile entity_mentions(const AnnotatedDocument& doc);

bool is_stopword(std::string_view lowercase_word);
bool is_punctuation(const Token& token);
// Lowercased lemmas of tokens that are neither punctuation nor stopwords.
std::vector<std::string> content_lemmas(const Sentence& sentence);

inline constexpr double kDefaultTopicAlpha = 0.01;

// Additively smoothed unigram distribution of the sentence's content lemmas
// over `vocab`. Lemmas outside `vocab` are ignored.
std::vector<double> unigram_topic(const Sentence& sentence, const std::vector<std::string>& vocab,
                                  double alpha = kDefaultTopicAlpha);

}  // namespace ccqg::annotation
