// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pipeline subcommands. Each reads its inputs from the configuration, writes
// its artifacts under output_dir and reports key metrics.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pipeline/config.hpp"

namespace ccqg::pipeline {

struct CommandResult {
  std::vector<std::string> lines;  // printed before the summary
  std::string metrics;             // "key=value key=value"
};

const std::vector<std::string>& command_names();
bool is_command(std::string_view name);

// Throws ccqg::UsageError, DataError or NumericError.
CommandResult run_command(std::string_view command, const PipelineConfig& config);

CommandResult prepare(const PipelineConfig& config);
CommandResult annotate_fallback(const PipelineConfig& config);
CommandResult calibrate(const PipelineConfig& config);
CommandResult label(const PipelineConfig& config);
CommandResult eval_estimator(const PipelineConfig& config);
CommandResult cluster_templates(const PipelineConfig& config);
CommandResult train(const PipelineConfig& config);
CommandResult generate(const PipelineConfig& config);
CommandResult eval_qg(const PipelineConfig& config);
CommandResult gradcheck(const PipelineConfig& config);

}  // namespace ccqg::pipeline
