// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "common/text.hpp"

namespace ccqg::pipeline {

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      // paths
      "corpus", "corpus_format", "records", "dev", "annotations", "normalizer", "checkpoint",
      "output_dir", "features", "input", "embeddings", "complexity",
      // estimator
      "lambda", "f3_mode", "alpha",
      // model
      "n_z", "n_pi", "top_k", "dim_complexity", "dim_expert", "dim_template", "hidden", "word_dim",
      "max_decode_len", "use_moe", "use_templates", "length_normalize", "init_scale", "vocab_size",
      // training
      "lr", "convergence_eps", "max_epochs", "batch_size", "seed", "embedding_source",
      "kmeans_restarts", "kmeans_max_iter", "freeze_templates", "threads",
      // gradcheck
      "gradcheck_step"};
  return keys;
}

bool is_known_key(std::string_view key) {
  const auto& keys = known_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

PipelineConfig PipelineConfig::parse(std::string_view text) {
  PipelineConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value', got '" + t + "'");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    c.set(key, trim(std::string_view(t).substr(eq + 1)));
  }
  return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  if (!is_known_key(key)) throw UsageError("unknown config key '" + key + "'");
  values_[key] = value;
}

std::optional<std::string> PipelineConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string PipelineConfig::get_or(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

const std::string& PipelineConfig::require(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) throw UsageError("missing config key '" + key + "'");
  return it->second;
}

std::size_t PipelineConfig::size_or(const std::string& key, std::size_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::size_t pos = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(*v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v->empty() || pos != v->size() || v->front() == '-') {
    throw UsageError("config key '" + key + "': expected a non-negative integer, got '" + *v + "'");
  }
  return static_cast<std::size_t>(out);
}

double PipelineConfig::double_or(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(*v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (v->empty() || pos != v->size()) {
    throw UsageError("config key '" + key + "': expected a number, got '" + *v + "'");
  }
  return out;
}

std::filesystem::path PipelineConfig::output_dir() const { return require("output_dir"); }

std::size_t PipelineConfig::threads() const {
  const std::size_t t = size_or("threads", 1);
  if (t < 1) throw UsageError("config key 'threads' must be >= 1");
  return t;
}

std::uint64_t PipelineConfig::seed() const { return size_or("seed", 13); }

model::ModelConfig PipelineConfig::model_config() const {
  auto c = model::ModelConfig::from_map(values_);
  c.validate();
  return c;
}

train::TrainConfig PipelineConfig::train_config() const {
  auto c = train::TrainConfig::from_map(values_);
  c.validate();
  return c;
}

estimator::EstimatorOptions PipelineConfig::estimator_options() const {
  estimator::EstimatorOptions o;
  o.alpha = double_or("alpha", o.alpha);
  if (!(o.alpha > 0.0)) throw UsageError("config key 'alpha' must be > 0");
  if (auto v = get("f3_mode")) o.f3_mode = estimator::parse_f3_mode(*v);
  return o;
}

std::string PipelineConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace ccqg::pipeline
