// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// ccqg: command-line front end over the C API.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccqg/ccqg.h"

namespace {

struct Invocation {
  std::string config_path;
  std::string threads;
  std::string complexity;
  std::string input;
};

const char* describe(const std::string& name) {
  if (name == "prepare") return "Load a SQuAD/HotpotQA corpus, drop unanswerable items, split 80/10/10";
  if (name == "annotate-fallback") return "Annotate records with the heuristic tokenizer (CoNLL-U)";
  if (name == "calibrate") return "Fit the feature normalizer and calibrate the threshold";
  if (name == "label") return "Label records with the complexity estimator";
  if (name == "eval-estimator") return "Confusion matrix and F1 of the estimator against gold labels";
  if (name == "cluster-templates") return "Cluster training questions into template-bank rows";
  if (name == "train") return "Train the generator with hard EM";
  if (name == "generate") return "Generate a question for a passage/answer input";
  if (name == "eval-qg") return "BLEU-4, ROUGE-L, consistency F1 and diversity of generations";
  if (name == "gradcheck") return "Finite-difference gradient check of a micro model";
  return "";
}

int fail(const std::string& command, int status, const std::string& message) {
  std::fprintf(stderr, "ccqg %s: error: %s\n", command.c_str(), message.c_str());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complexity-controllable question generation pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ccqg_version());

  Invocation inv;
  std::vector<CLI::App*> subcommands;
  std::string names = ccqg_command_names();
  std::size_t start = 0;
  while (start < names.size()) {
    std::size_t end = names.find(' ', start);
    if (end == std::string::npos) end = names.size();
    const std::string name = names.substr(start, end - start);
    start = end + 1;
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->allow_extras();
    sub->add_option("--config", inv.config_path, "Flat key = value configuration file");
    sub->add_option("--threads", inv.threads, "Worker cap");
    if (name == "generate") {
      sub->add_option("--complexity", inv.complexity, "simple or complex");
      sub->add_option("--input", inv.input, "JSON file with \"passage\" and \"answer\"");
    }
    sub->footer("Any configuration key may be overridden with --<key> <value>.");
    subcommands.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    std::fprintf(stderr, "\n%s", app.help().c_str());
    return 1;
  }

  CLI::App* chosen = nullptr;
  for (auto* sub : subcommands) {
    if (sub->parsed()) chosen = sub;
  }
  const std::string command = chosen->get_name();

  ccqg_config* config = nullptr;
  ccqg_status status = inv.config_path.empty() ? ccqg_config_create(&config)
                                               : ccqg_config_load(inv.config_path.c_str(), &config);
  if (status != CCQG_OK) return fail(command, status, ccqg_last_error());

  auto set = [&](const std::string& key, const std::string& value) {
    if (status == CCQG_OK) status = ccqg_config_set(config, key.c_str(), value.c_str());
  };
  const auto extras = chosen->remaining();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3) {
      ccqg_config_destroy(config);
      std::fprintf(stderr, "%s", chosen->help().c_str());
      return fail(command, 1, "unexpected argument '" + arg + "'");
    }
    std::string key = arg.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else if (i + 1 < extras.size()) {
      value = extras[++i];
    } else {
      ccqg_config_destroy(config);
      return fail(command, 1, "flag '" + arg + "' needs a value");
    }
    set(key, value);
    if (status != CCQG_OK) {
      std::string message = ccqg_last_error();
      ccqg_config_destroy(config);
      std::fprintf(stderr, "%s", chosen->help().c_str());
      return fail(command, status, message);
    }
  }
  if (!inv.threads.empty()) set("threads", inv.threads);
  if (!inv.complexity.empty()) set("complexity", inv.complexity);
  if (!inv.input.empty()) set("input", inv.input);
  if (status != CCQG_OK) {
    std::string message = ccqg_last_error();
    ccqg_config_destroy(config);
    return fail(command, status, message);
  }

  const auto t0 = std::chrono::steady_clock::now();
  ccqg_result* result = nullptr;
  status = ccqg_run(command.c_str(), config, &result);
  ccqg_config_destroy(config);
  if (status != CCQG_OK) return fail(command, status, ccqg_last_error());
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  std::fputs(ccqg_result_output(result), stdout);
  std::printf("%s ok %s %lldms\n", command.c_str(), ccqg_result_metrics(result), static_cast<long long>(elapsed));
  ccqg_result_destroy(result);
  return 0;
}
