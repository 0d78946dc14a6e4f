// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "annotation/annotation.hpp"
#include "data/qa_instance.hpp"
#include "estimator/estimator.hpp"

namespace ccqg::data {

class Vocab {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kSos = 1;
  static constexpr std::size_t kEos = 2;
  static constexpr std::size_t kUnk = 3;
  static constexpr std::size_t kNumSpecials = 4;

  Vocab();
  // `tokens` excludes the specials; they are prepended.
  explicit Vocab(const std::vector<std::string>& tokens);

  std::size_t size() const { return tokens_.size(); }
  std::optional<std::size_t> find(std::string_view token) const;
  // kUnk when absent.
  std::size_t id(std::string_view token) const;
  const std::string& token(std::size_t id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::uint64_t fingerprint() const;

  // One token per line in id order, specials included.
  void save(const std::filesystem::path& path) const;
  static Vocab load(const std::filesystem::path& path);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> ids_;
};

enum class QaFormat { Squad, HotpotQa };
QaFormat parse_qa_format(std::string_view text);

struct DatasetSplit {
  std::vector<QAInstance> train;
  std::vector<QAInstance> dev;
  std::vector<QAInstance> test;
  std::uint64_t seed = 0;
};

struct FilterResult {
  std::vector<QAInstance> kept;
  std::size_t removed = 0;
};

struct LabelReport {
  std::vector<QAInstance> instances;  // labeled instances only
  std::vector<estimator::Estimate> estimates;  // parallel to `instances`
  std::size_t simple = 0;
  std::size_t complex = 0;
  std::vector<std::string> skipped;  // "<id>: <reason>"
};

// First match of model_tokens(answer) in model_tokens(passage).
std::optional<TokenRange> find_answer_span(std::string_view passage, std::string_view answer);

// Records with an empty question (or, for SQuAD, no answers) are skipped and
// reported through `warnings`, or stderr when `warnings` is null.
std::vector<QAInstance> load_qa_json(const std::filesystem::path& path, QaFormat format,
                                     std::vector<std::string>* warnings = nullptr);
std::vector<QAInstance> parse_qa_json(std::string_view text, QaFormat format,
                                      std::vector<std::string>* warnings = nullptr);

FilterResult filter_answerable(std::vector<QAInstance> instances);

// Deterministic shuffle under `seed`, then floor(0.8 n) train and the
// remainder split evenly between dev and test, any odd one going to test.
DatasetSplit split_dataset(std::vector<QAInstance> instances, std::uint64_t seed);

LabelReport label_corpus(const std::vector<QAInstance>& instances,
                         const estimator::FeatureNormalizer& normalizer,
                         const annotation::AnnotationIndex& annotations,
                         const estimator::EstimatorOptions& options = {}, std::size_t threads = 1);

// model_tokens of passages and questions, most frequent first,
// ties lexicographic, truncated to max_size - 4 before the specials.
Vocab build_vocab(const std::vector<QAInstance>& instances, std::size_t max_size);

// ---- line-delimited records ------------------------------------------------------

std::string record_to_json(const QAInstance& instance);
QAInstance record_from_json(std::string_view line);
void write_records(const std::vector<QAInstance>& instances, const std::filesystem::path& path);
std::vector<QAInstance> read_records(const std::filesystem::path& path);

void write_split_manifest(const DatasetSplit& split, const std::filesystem::path& path);

}  // namespace ccqg::data
