// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Flat "key = value" pipeline configuration with command-line overrides.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "estimator/estimator.hpp"
#include "model/model.hpp"
#include "train/train.hpp"

namespace ccqg::pipeline {

const std::vector<std::string>& known_keys();
bool is_known_key(std::string_view key);

class PipelineConfig {
 public:
  // Lines are "key = value"; '#' starts a comment line. Unknown keys are
  // usage errors.
  static PipelineConfig parse(std::string_view text);
  static PipelineConfig load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  // Throws ccqg::UsageError("missing config key '<key>'").
  const std::string& require(const std::string& key) const;

  std::size_t size_or(const std::string& key, std::size_t fallback) const;
  double double_or(const std::string& key, double fallback) const;

  std::filesystem::path output_dir() const;
  std::size_t threads() const;
  std::uint64_t seed() const;

  model::ModelConfig model_config() const;
  train::TrainConfig train_config() const;
  estimator::EstimatorOptions estimator_options() const;

  const std::map<std::string, std::string>& values() const { return values_; }
  std::string serialize() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace ccqg::pipeline
