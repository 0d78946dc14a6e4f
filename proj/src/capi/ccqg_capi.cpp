// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "ccqg/ccqg.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "common/error.hpp"
#include "common/text.hpp"
#include "estimator/estimator.hpp"
#include "model/model.hpp"
#include "pipeline/commands.hpp"
#include "pipeline/config.hpp"

struct ccqg_config {
  ccqg::pipeline::PipelineConfig value;
};

struct ccqg_result {
  std::string metrics;
  std::string output;
};

struct ccqg_normalizer {
  ccqg::estimator::FeatureNormalizer value;
};

struct ccqg_model {
  ccqg::model::CcqgModel value;
};

namespace {

thread_local std::string last_error;

template <typename Body>
ccqg_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return CCQG_OK;
  } catch (const ccqg::UsageError& e) {
    last_error = e.what();
    return CCQG_USAGE_ERROR;
  } catch (const ccqg::DataError& e) {
    last_error = e.what();
    return CCQG_DATA_ERROR;
  } catch (const ccqg::NumericError& e) {
    last_error = e.what();
    return CCQG_NUMERIC_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CCQG_INTERNAL_ERROR;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return CCQG_DATA_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CCQG_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw ccqg::UsageError(std::string(what) + " is null");
}

void copy_out(const std::string& text, char* buf, std::size_t len, std::size_t* required) {
  if (required) *required = text.size() + 1;
  if (buf == nullptr || len == 0) return;
  const std::size_t n = std::min(text.size(), len - 1);
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

}  // namespace

extern "C" {

const char* ccqg_version(void) { return "0.1.0"; }

const char* ccqg_last_error(void) { return last_error.c_str(); }

ccqg_status ccqg_config_create(ccqg_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ccqg_config{};
  });
}

ccqg_status ccqg_config_load(const char* path, ccqg_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ccqg_config{ccqg::pipeline::PipelineConfig::load(path)};
  });
}

ccqg_status ccqg_config_set(ccqg_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->value.set(key, value);
  });
}

ccqg_status ccqg_config_get(const ccqg_config* config, const char* key, char* buf, size_t len, int* found) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    auto v = config->value.get(key);
    if (found) *found = v ? 1 : 0;
    copy_out(v.value_or(""), buf, len, nullptr);
  });
}

void ccqg_config_destroy(ccqg_config* config) { delete config; }

int ccqg_is_command(const char* name) { return name != nullptr && ccqg::pipeline::is_command(name); }

const char* ccqg_command_names(void) {
  static const std::string names = ccqg::join(ccqg::pipeline::command_names(), " ");
  return names.c_str();
}

ccqg_status ccqg_run(const char* command, const ccqg_config* config, ccqg_result** out) {
  return guarded([&] {
    require(command, "command");
    require(config, "config");
    require(out, "out");
    *out = nullptr;
    auto r = ccqg::pipeline::run_command(command, config->value);
    auto result = std::make_unique<ccqg_result>();
    result->metrics = r.metrics;
    for (const auto& line : r.lines) result->output += line + "\n";
    *out = result.release();
  });
}

const char* ccqg_result_metrics(const ccqg_result* result) { return result ? result->metrics.c_str() : ""; }

const char* ccqg_result_output(const ccqg_result* result) { return result ? result->output.c_str() : ""; }

void ccqg_result_destroy(ccqg_result* result) { delete result; }

ccqg_status ccqg_normalizer_load(const char* path, ccqg_normalizer** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new ccqg_normalizer{ccqg::estimator::load_normalizer(path)};
  });
}

double ccqg_normalizer_lambda(const ccqg_normalizer* normalizer) {
  return normalizer ? normalizer->value.lambda : 0.0;
}

ccqg_status ccqg_normalizer_score(const ccqg_normalizer* normalizer, const double raw[5], double* score,
                                  ccqg_complexity* label) {
  return guarded([&] {
    require(normalizer, "normalizer");
    require(raw, "raw");
    ccqg::estimator::FeatureVector v{};
    std::copy(raw, raw + v.size(), v.begin());
    auto e = ccqg::estimator::estimate(ccqg::estimator::ComplexityFeatures::from_array(v), normalizer->value);
    if (score) *score = e.score;
    if (label) *label = e.label == ccqg::ComplexityLabel::Simple ? CCQG_SIMPLE : CCQG_COMPLEX;
  });
}

void ccqg_normalizer_destroy(ccqg_normalizer* normalizer) { delete normalizer; }

ccqg_status ccqg_model_load(const char* checkpoint_dir, ccqg_model** out) {
  return guarded([&] {
    require(checkpoint_dir, "checkpoint_dir");
    require(out, "out");
    *out = new ccqg_model{ccqg::model::CcqgModel::load(checkpoint_dir)};
  });
}

ccqg_status ccqg_model_generate(const ccqg_model* model, const char* passage, const char* answer,
                                ccqg_complexity complexity, char* buf, size_t len, size_t* required,
                                size_t* expert) {
  return guarded([&] {
    require(model, "model");
    require(passage, "passage");
    require(answer, "answer");
    if (complexity != CCQG_SIMPLE && complexity != CCQG_COMPLEX) {
      throw ccqg::UsageError("complexity must be CCQG_SIMPLE or CCQG_COMPLEX");
    }
    auto source = ccqg::model::SourceInput::from_text(passage, answer);
    if (source.passage.empty() || source.answer.empty()) throw ccqg::DataError("empty passage or answer");
    auto level = complexity == CCQG_SIMPLE ? ccqg::ComplexityLabel::Simple : ccqg::ComplexityLabel::Complex;
    auto g = model->value.generate(source, level);
    copy_out(ccqg::join(g.tokens, " "), buf, len, required);
    if (expert) *expert = g.expert;
  });
}

void ccqg_model_destroy(ccqg_model* model) { delete model; }

}  // extern "C"
