// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

#include "annotation/annotation.hpp"
#include "common/error.hpp"
#include "common/text.hpp"

namespace ccqg::annotation {

namespace {

// Clause-introducing dependency relations; each marks one subordinate clause.
constexpr std::array<std::string_view, 8> kClauseRelations = {
    "csubj", "csubjpass", "ccomp", "xcomp", "advcl", "acl", "acl:relcl", "relcl"};

// Adverbial, adjectival, nominal and possessive modifiers.
constexpr std::array<std::string_view, 7> kModifierRelations = {
    "advmod", "amod", "nmod", "nmod:npmod", "npmod", "nmod:poss", "poss"};

// English function words excluded from topic distributions.
constexpr std::array<std::string_view, 127> kStopwords = {
    "a",       "about",   "above",  "after",   "again",  "against", "all",     "am",
    "an",      "and",     "any",    "are",     "as",     "at",      "be",      "because",
    "been",    "before",  "being",  "below",   "between", "both",   "but",     "by",
    "can",     "could",   "did",    "do",      "does",   "doing",   "down",    "during",
    "each",    "few",     "for",    "from",    "further", "had",    "has",     "have",
    "having",  "he",      "her",    "here",    "hers",   "herself", "him",     "himself",
    "his",     "how",     "i",      "if",      "in",     "into",    "is",      "it",
    "its",     "itself",  "just",   "me",      "more",   "most",    "my",      "myself",
    "no",      "nor",     "not",    "now",     "of",     "off",     "on",      "once",
    "only",    "or",      "other",  "our",     "ours",   "ourselves", "out",   "over",
    "own",     "same",    "she",    "should",  "so",     "some",    "such",    "than",
    "that",    "the",     "their",  "theirs",  "them",   "themselves", "then", "there",
    "these",   "they",    "this",   "those",   "through", "to",     "too",     "under",
    "until",   "up",      "very",   "was",     "we",     "were",    "what",    "when",
    "where",   "which",   "while",  "who",     "whom",   "why",     "will",    "with",
    "would",   "you",     "your",   "yours",   "yourself", "yourselves", "'s"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view value) {
  return std::find(set.begin(), set.end(), value) != set.end();
}

}  // namespace

bool is_clause_relation(std::string_view deprel) { return contains(kClauseRelations, deprel); }
bool is_modifier_relation(std::string_view deprel) { return contains(kModifierRelations, deprel); }

std::size_t clause_count(const Sentence& sentence) {
  return 1 + static_cast<std::size_t>(std::count_if(
                 sentence.tokens.begin(), sentence.tokens.end(),
                 [](const Token& t) { return is_clause_relation(t.deprel); }));
}

std::size_t mod_relation_count(const Sentence& sentence) {
  return static_cast<std::size_t>(
      std::count_if(sentence.tokens.begin(), sentence.tokens.end(),
                    [](const Token& t) { return is_modifier_relation(t.deprel); }));
}

EntityProfile entity_mentions(const AnnotatedDocument& doc) {
  EntityProfile profile;
  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const auto& tokens = doc.sentences[si].tokens;
    std::size_t i = 0;
    while (i < tokens.size()) {
      const std::string& tag = tokens[i].entity;
      if (!starts_with(tag, "B-") && !starts_with(tag, "I-")) {
        ++i;
        continue;
      }
      std::vector<std::string> words{to_lower(tokens[i].form)};
      std::size_t j = i + 1;
      while (j < tokens.size() && starts_with(tokens[j].entity, "I-")) {
        words.push_back(to_lower(tokens[j].form));
        ++j;
      }
      profile.mentions[join(words, " ")].push_back({si, i});
      ++profile.total_mentions;
      i = j;
    }
  }
  return profile;
}

bool is_stopword(std::string_view lowercase_word) { return contains(kStopwords, lowercase_word); }

bool is_punctuation(const Token& token) {
  if (token.upos == "PUNCT" || token.upos == "SYM") return true;
  return !token.form.empty() && std::all_of(token.form.begin(), token.form.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  });
}

std::vector<std::string> content_lemmas(const Sentence& sentence) {
  std::vector<std::string> out;
  for (const auto& t : sentence.tokens) {
    if (is_punctuation(t)) continue;
    std::string lemma = to_lower(t.lemma.empty() || t.lemma == "_" ? t.form : t.lemma);
    if (is_stopword(lemma) || is_stopword(to_lower(t.form))) continue;
    out.push_back(std::move(lemma));
  }
  return out;
}

std::vector<double> unigram_topic(const Sentence& sentence, const std::vector<std::string>& vocab,
                                  double alpha) {
  if (vocab.empty()) throw UsageError("unigram_topic: empty vocabulary");
  if (!(alpha > 0.0)) throw UsageError("unigram_topic: alpha must be positive");
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < vocab.size(); ++i) position.emplace(vocab[i], i);
  std::vector<double> counts(vocab.size(), 0.0);
  double total = 0.0;
  for (const auto& lemma : content_lemmas(sentence)) {
    auto it = position.find(lemma);
    if (it == position.end()) continue;
    counts[it->second] += 1.0;
    total += 1.0;
  }
  const double denom = total + alpha * static_cast<double>(vocab.size());
  for (double& c : counts) c = (c + alpha) / denom;
  return counts;
}

}  // namespace ccqg::annotation
