// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "train/train.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "common/error.hpp"
#include "common/hash.hpp"
#include "common/parallel.hpp"
#include "common/text.hpp"

namespace ccqg::train {

namespace {

std::size_t parse_size(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (value.empty() || pos != value.size() || value.front() == '-') {
    throw UsageError("config key '" + key + "': expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::size_t>(v);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (value.empty() || pos != value.size()) {
    throw UsageError("config key '" + key + "': expected a number, got '" + value + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

EmbeddingSource parse_embedding_source(std::string_view text) {
  if (text == "internal") return EmbeddingSource::Internal;
  if (text == "file") return EmbeddingSource::File;
  throw UsageError("embedding_source must be internal or file, got '" + std::string(text) + "'");
}

void TrainConfig::validate() const {
  if (!(lr >= 0.0) || !std::isfinite(lr)) throw UsageError("train config: lr must be >= 0");
  if (!(convergence_eps > 0.0)) throw UsageError("train config: convergence_eps must be > 0");
  if (max_epochs < 1) throw UsageError("train config: max_epochs must be >= 1");
  if (batch_size < 1) throw UsageError("train config: batch_size must be >= 1");
  if (kmeans_max_iter < 1) throw UsageError("train config: kmeans_max_iter must be >= 1");
  if (threads < 1) throw UsageError("train config: threads must be >= 1");
}

std::map<std::string, std::string> TrainConfig::to_map() const {
  return {{"lr", format_double(lr)},
          {"convergence_eps", format_double(convergence_eps)},
          {"max_epochs", std::to_string(max_epochs)},
          {"batch_size", std::to_string(batch_size)},
          {"seed", std::to_string(seed)},
          {"embedding_source", embedding_source == EmbeddingSource::File ? "file" : "internal"},
          {"kmeans_restarts", std::to_string(kmeans_restarts)},
          {"kmeans_max_iter", std::to_string(kmeans_max_iter)},
          {"freeze_templates", freeze_templates ? "true" : "false"}};
}

TrainConfig TrainConfig::from_map(const std::map<std::string, std::string>& values) {
  TrainConfig c;
  auto get = [&](const char* key) -> const std::string* {
    auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  };
  if (auto v = get("lr")) c.lr = parse_double("lr", *v);
  if (auto v = get("convergence_eps")) c.convergence_eps = parse_double("convergence_eps", *v);
  if (auto v = get("max_epochs")) c.max_epochs = parse_size("max_epochs", *v);
  if (auto v = get("batch_size")) c.batch_size = parse_size("batch_size", *v);
  if (auto v = get("seed")) c.seed = parse_size("seed", *v);
  if (auto v = get("embedding_source")) c.embedding_source = parse_embedding_source(*v);
  if (auto v = get("embeddings")) c.embedding_file = *v;
  if (auto v = get("kmeans_restarts")) c.kmeans_restarts = parse_size("kmeans_restarts", *v);
  if (auto v = get("kmeans_max_iter")) c.kmeans_max_iter = parse_size("kmeans_max_iter", *v);
  if (auto v = get("freeze_templates")) {
    if (*v == "true" || *v == "1") c.freeze_templates = true;
    else if (*v == "false" || *v == "0") c.freeze_templates = false;
    else throw UsageError("config key 'freeze_templates': expected true/false, got '" + *v + "'");
  }
  if (auto v = get("threads")) c.threads = parse_size("threads", *v);
  return c;
}

TrainingExample make_example(const data::QAInstance& instance) {
  auto level = instance.training_label();
  if (!level) throw DataError("instance " + instance.id + " has no complexity label");
  TrainingExample e;
  e.source = model::SourceInput::from_instance(instance);
  e.question = model_tokens(instance.question);
  e.level = *level;
  if (e.source.passage.empty() || e.source.answer.empty()) {
    throw DataError("instance " + instance.id + " has an empty passage or answer");
  }
  return e;
}

std::vector<TrainingExample> make_examples(const std::vector<data::QAInstance>& instances) {
  std::vector<TrainingExample> out;
  out.reserve(instances.size());
  for (const auto& i : instances) out.push_back(make_example(i));
  return out;
}

std::size_t select_expert(const std::vector<double>& losses) {
  if (losses.empty()) throw UsageError("select_expert: no losses");
  std::size_t best = 0;
  for (std::size_t z = 1; z < losses.size(); ++z) {
    if (losses[z] < losses[best]) best = z;
  }
  return best;
}

HardEmTrainer::HardEmTrainer(model::CcqgModel& model, TrainConfig config)
    : model_(model), config_(std::move(config)), rng_(mix_seed(config_.seed, "gate-noise")) {
  config_.validate();
}

std::vector<nn::Tensor> HardEmTrainer::trainable() const {
  std::vector<nn::Tensor> out;
  const auto& store = model_.parameters();
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& name = store.names()[i];
    if (config_.freeze_templates && starts_with(name, "template.")) continue;
    out.push_back(store.tensors()[i]);
  }
  return out;
}

EpochStats HardEmTrainer::epoch(const std::vector<TrainingExample>& examples) {
  if (examples.empty()) throw DataError("hard-EM epoch over an empty training set");
  const std::size_t n_active = model_.config().active_experts();
  EpochStats stats;
  stats.epoch = ++epochs_run_;
  stats.selection_counts.assign(model_.config().n_z, 0);
  auto params = trainable();
  const nn::AdamOptions adam{.lr = config_.lr};
  double total_nll = 0.0;

  for (std::size_t start = 0; start < examples.size(); start += config_.batch_size) {
    const std::size_t count = std::min(config_.batch_size, examples.size() - start);
    std::vector<std::vector<double>> losses(count, std::vector<double>(n_active));
    parallel_for(count * n_active, config_.threads, [&](std::size_t job) {
      const auto& ex = examples[start + job / n_active];
      nn::NoGradGuard no_grad;
      losses[job / n_active][job % n_active] =
          -model_.sequence_log_prob(ex.source, ex.question, ex.level, job % n_active).item();
    });

    model_.parameters().zero_grad();
    for (std::size_t b = 0; b < count; ++b) {
      const auto& ex = examples[start + b];
      for (double l : losses[b]) {
        if (!std::isfinite(l)) {
          throw NumericError("non-finite loss at epoch " + std::to_string(stats.epoch) + " on example " +
                             std::to_string(start + b));
        }
      }
      const std::size_t z = select_expert(losses[b]);
      ++stats.selection_counts[z];
      total_nll += losses[b][z];

      nn::Tensor loss = nn::scale(
          model_.sequence_log_prob(ex.source, ex.question, ex.level, z, model::GateNoise{&rng_}),
          -1.0 / static_cast<double>(count));
      if (!std::isfinite(loss.item())) {
        throw NumericError("non-finite training loss at epoch " + std::to_string(stats.epoch) +
                           " on example " + std::to_string(start + b));
      }
      loss.backward();
    }
    nn::adam_step(params, adam_, adam);
  }
  stats.train_nll = total_nll / static_cast<double>(examples.size());
  return stats;
}

double HardEmTrainer::dev_nll(const std::vector<TrainingExample>& examples) const {
  if (examples.empty()) throw DataError("dev NLL over an empty set");
  std::vector<double> values(examples.size());
  parallel_for(examples.size(), config_.threads, [&](std::size_t i) {
    const auto& ex = examples[i];
    values[i] = -model_.mixture_log_prob(ex.source, ex.question, ex.level);
  });
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(examples.size());
}

TrainReport HardEmTrainer::train(const std::vector<TrainingExample>& train_set,
                                 const std::vector<TrainingExample>& dev_set) {
  const auto& dev = dev_set.empty() ? train_set : dev_set;
  TrainReport report;
  nn::ParameterStore best;
  for (std::size_t e = 0; e < config_.max_epochs; ++e) {
    EpochStats stats = epoch(train_set);
    stats.dev_nll = dev_nll(dev);
    if (!std::isfinite(stats.dev_nll)) {
      throw NumericError("non-finite dev NLL at epoch " + std::to_string(stats.epoch));
    }
    if (report.epochs.empty() || stats.dev_nll < report.best_dev_nll) {
      report.best_dev_nll = stats.dev_nll;
      report.best_epoch = stats.epoch;
      best = model_.parameters().clone();
    }
    const bool converged =
        !report.epochs.empty() &&
        std::abs(stats.dev_nll - report.epochs.back().dev_nll) < config_.convergence_eps;
    report.epochs.push_back(std::move(stats));
    if (converged) {
      report.converged = true;
      break;
    }
  }
  model_.parameters().assign_values(best);
  return report;
}

std::string format_report_tsv(const TrainReport& report) {
  std::ostringstream out;
  out << "epoch\ttrain_nll\tdev_nll\tselection_counts\n";
  for (const auto& e : report.epochs) {
    out << e.epoch << '\t' << format_double(e.train_nll) << '\t' << format_double(e.dev_nll) << '\t';
    for (std::size_t z = 0; z < e.selection_counts.size(); ++z) {
      out << (z ? "," : "") << e.selection_counts[z];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ccqg::train
