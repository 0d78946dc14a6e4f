// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "pipeline/commands.hpp"
#include "pipeline/config.hpp"

using namespace ccqg;
using namespace ccqg::pipeline;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(CCQG_SOURCE_DIR) / "data" / "fixtures";

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("ccqg_test_pipeline_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string metric(const std::string& metrics, const std::string& key) {
  std::istringstream in(metrics);
  std::string item;
  while (in >> item) {
    if (item.rfind(key + "=", 0) == 0) return item.substr(key.size() + 1);
  }
  return "";
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = PipelineConfig::parse("# comment\nseed = 7\n\n hidden=32 \nuse_moe = false\n");
  CHECK(c.seed() == 7);
  CHECK(c.model_config().hidden == 32);
  CHECK_FALSE(c.model_config().use_moe);
  CHECK(c.get_or("lr", "x") == "x");
  CHECK(c.train_config().seed == 7);
  CHECK(PipelineConfig::parse(c.serialize()).values() == c.values());
  CHECK(PipelineConfig().seed() == 13);
  CHECK_THROWS_AS(PipelineConfig::parse("no equals sign\n"), UsageError);
  CHECK_THROWS_AS(PipelineConfig::load("/nonexistent/ccqg.conf"), UsageError);
}

TEST_CASE("unknown and missing keys are usage errors with the key in the message") {
  PipelineConfig c;
  try {
    c.set("hiddne", "3");
    FAIL("expected a UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()) == "unknown config key 'hiddne'");
  }
  try {
    run_command("prepare", c);
    FAIL("expected a UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()) == "missing config key 'corpus'");
  }
  CHECK_THROWS_AS(run_command("fly", c), UsageError);
  CHECK(is_command("eval-qg"));
  CHECK_FALSE(is_command("fly"));
  c.set("hidden", "lots");
  CHECK_THROWS_AS(c.model_config(), UsageError);
}

TEST_CASE("calibrate on planted features") {
  PipelineConfig c;
  c.set("features", (kFixtures / "planted_features.jsonl").string());
  c.set("output_dir", fresh_dir("calibrate").string());
  auto r = run_command("calibrate", c);
  CHECK(metric(r.metrics, "lambda") == "0.6500");
  CHECK(metric(r.metrics, "macro_f1") == "1.0000");
  CHECK(metric(r.metrics, "items") == "200");
  CHECK(fs::exists(fs::path(c.require("output_dir")) / "normalizer.txt"));
}

TEST_CASE("data preparation and labeling are reproducible") {
  const auto run = [](const std::string& name) {
    const auto out = fresh_dir(name);
    PipelineConfig c;
    c.set("corpus", (kFixtures / "toy_hotpot.json").string());
    c.set("corpus_format", "hotpotqa");
    c.set("output_dir", out.string());
    c.set("seed", "3");
    auto prep = run_command("prepare", c);
    CHECK(prep.metrics == "train=19 dev=2 test=3 removed=0");
    c.set("records", (out / "train.jsonl").string());
    CHECK(metric(run_command("annotate-fallback", c).metrics, "documents") == "38");
    c.set("annotations", (out / "passages.conllu").string() + "," + (out / "questions.conllu").string());
    run_command("calibrate", c);
    c.set("normalizer", (out / "normalizer.txt").string());
    auto lab = run_command("label", c);
    CHECK(std::stoul(metric(lab.metrics, "simple")) + std::stoul(metric(lab.metrics, "complex")) == 19);
    return out;
  };
  const auto a = run("repro_a");
  const auto b = run("repro_b");
  for (const char* file : {"train.jsonl", "dev.jsonl", "test.jsonl", "split.json", "passages.conllu",
                           "questions.conllu", "normalizer.txt", "labeled.jsonl"}) {
    CAPTURE(file);
    CHECK(fs::exists(a / file));
    CHECK(slurp(a / file) == slurp(b / file));
  }
}
