// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "annotation/annotation.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "data/dataset.hpp"
#include "estimator/estimator.hpp"
#include "eval/metrics.hpp"
#include "model/gradient_check.hpp"
#include "model/model.hpp"
#include "train/train.hpp"

namespace ccqg::pipeline {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kGradcheckThreshold = 1e-4;

std::string fixed(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
}

fs::path prepare_output(const PipelineConfig& config) {
  fs::path dir = config.output_dir();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output_dir " + dir.string() + ": " + ec.message());
  return dir;
}

// Comma-separated CoNLL-U files merged into one index.
annotation::AnnotationIndex load_annotations(const std::string& paths) {
  std::vector<annotation::AnnotatedDocument> docs;
  for (const auto& p : split(paths, ',')) {
    const std::string path = trim(p);
    if (path.empty()) continue;
    try {
      auto parsed = annotation::parse_conllu(read_text(path));
      docs.insert(docs.end(), std::make_move_iterator(parsed.begin()), std::make_move_iterator(parsed.end()));
    } catch (const DataError& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  return annotation::index_documents(std::move(docs));
}

struct LabeledFeatures {
  std::vector<std::string> ids;
  std::vector<estimator::ComplexityFeatures> features;
  std::vector<ComplexityLabel> gold;
  std::vector<std::string> skipped;
};

LabeledFeatures read_feature_file(const fs::path& path) {
  std::istringstream in(read_text(path));
  LabeledFeatures out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    try {
      json j = json::parse(line);
      const auto& raw = j.at("raw");
      if (!raw.is_array() || raw.size() != estimator::kNumFeatures) {
        throw DataError(where + "'raw' must hold " + std::to_string(estimator::kNumFeatures) + " numbers");
      }
      estimator::FeatureVector v{};
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = raw.at(i).get<double>();
      auto gold = parse_label(j.at("gold").get<std::string>());
      if (!gold) throw DataError(where + "unknown gold label");
      out.ids.push_back(j.contains("id") ? j.at("id").get<std::string>() : std::to_string(line_no));
      out.features.push_back(estimator::ComplexityFeatures::from_array(v));
      out.gold.push_back(*gold);
    } catch (const json::exception& e) {
      throw DataError(where + e.what());
    }
  }
  if (out.features.empty()) throw DataError(path.string() + ": no feature rows");
  return out;
}

LabeledFeatures features_from_records(const PipelineConfig& config) {
  const auto instances = data::read_records(config.require("records"));
  const auto annotations = load_annotations(config.require("annotations"));
  const auto options = config.estimator_options();
  LabeledFeatures out;
  for (const auto& inst : instances) {
    if (!inst.gold_complexity) {
      out.skipped.push_back(inst.id + ": no gold label");
      continue;
    }
    try {
      out.features.push_back(estimator::compute_raw_features(inst, annotations, options));
      out.ids.push_back(inst.id);
      out.gold.push_back(*inst.gold_complexity);
    } catch (const DataError& e) {
      out.skipped.push_back(inst.id + ": " + e.what());
    }
  }
  if (out.features.empty()) throw DataError("no gold-labeled instances with annotations");
  return out;
}

LabeledFeatures labeled_features(const PipelineConfig& config) {
  if (config.has("features")) return read_feature_file(config.require("features"));
  if (!config.has("records")) throw UsageError("missing config key 'features' (or 'records' with 'annotations')");
  return features_from_records(config);
}

json evaluation_json(const estimator::EstimatorEvaluation& e) {
  const auto& c = e.confusion;
  json j;
  j["confusion"] = {{"true_simple_pred_simple", c.ts_ps},
                    {"true_simple_pred_complex", c.ts_pc},
                    {"true_complex_pred_simple", c.tc_ps},
                    {"true_complex_pred_complex", c.tc_pc}};
  j["f1_simple"] = e.f1_simple;
  j["f1_complex"] = e.f1_complex;
  j["macro_f1"] = e.macro_f1;
  j["weighted_f1"] = e.weighted_f1;
  return j;
}

model::CcqgModel load_checkpoint(const PipelineConfig& config) {
  return model::CcqgModel::load(config.require("checkpoint"));
}

// Estimator label of a generated question: the question is annotated with the
// fallback tokenizer, the passage comes from `annotations` when present.
class GeneratedQuestionLabeler {
 public:
  GeneratedQuestionLabeler(estimator::FeatureNormalizer normalizer, estimator::EstimatorOptions options,
                           annotation::AnnotationIndex annotations)
      : normalizer_(normalizer), options_(options), annotations_(std::move(annotations)) {}

  ComplexityLabel operator()(const data::QAInstance& instance, const std::string& question) const {
    annotation::AnnotatedDocument passage;
    if (auto it = annotations_.find(data::passage_doc_id(instance.id)); it != annotations_.end()) {
      passage = it->second;
    } else {
      passage = annotation::tokenize_fallback(instance.passage, data::passage_doc_id(instance.id));
    }
    const std::string text = trim(question).empty() ? "?" : question;
    auto q = annotation::tokenize_fallback(text, data::question_doc_id(instance.id));
    auto span = estimator::locate_answer(passage, instance.answer_text);
    if (!span) span = data::TokenRange{0, std::min<std::size_t>(1, passage.token_count())};
    auto raw = estimator::compute_raw_features(q, passage, *span, options_);
    return estimator::estimate(raw, normalizer_).label;
  }

 private:
  estimator::FeatureNormalizer normalizer_;
  estimator::EstimatorOptions options_;
  annotation::AnnotationIndex annotations_;
};

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"prepare", "annotate-fallback", "calibrate", "label",
                                              "eval-estimator", "cluster-templates", "train",
                                              "generate", "eval-qg", "gradcheck"};
  return names;
}

bool is_command(std::string_view name) {
  const auto& names = command_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CommandResult run_command(std::string_view command, const PipelineConfig& config) {
  if (command == "prepare") return prepare(config);
  if (command == "annotate-fallback") return annotate_fallback(config);
  if (command == "calibrate") return calibrate(config);
  if (command == "label") return label(config);
  if (command == "eval-estimator") return eval_estimator(config);
  if (command == "cluster-templates") return cluster_templates(config);
  if (command == "train") return train(config);
  if (command == "generate") return generate(config);
  if (command == "eval-qg") return eval_qg(config);
  if (command == "gradcheck") return gradcheck(config);
  throw UsageError("unknown command '" + std::string(command) + "'");
}

CommandResult prepare(const PipelineConfig& config) {
  const auto format = data::parse_qa_format(config.get_or("corpus_format", "squad"));
  const std::string corpus = config.require("corpus");
  const fs::path out = prepare_output(config);
  std::vector<std::string> warnings;
  auto instances = data::load_qa_json(corpus, format, &warnings);
  auto filtered = data::filter_answerable(std::move(instances));
  auto split = data::split_dataset(std::move(filtered.kept), config.seed());
  data::write_records(split.train, out / "train.jsonl");
  data::write_records(split.dev, out / "dev.jsonl");
  data::write_records(split.test, out / "test.jsonl");
  data::write_split_manifest(split, out / "split.json");

  CommandResult r;
  for (const auto& w : warnings) r.lines.push_back("warning: " + w);
  r.metrics = "train=" + std::to_string(split.train.size()) + " dev=" + std::to_string(split.dev.size()) +
              " test=" + std::to_string(split.test.size()) + " removed=" + std::to_string(filtered.removed);
  return r;
}

CommandResult annotate_fallback(const PipelineConfig& config) {
  const auto instances = data::read_records(config.require("records"));
  const fs::path out = prepare_output(config);
  std::vector<annotation::AnnotatedDocument> passages;
  std::vector<annotation::AnnotatedDocument> questions;
  CommandResult r;
  for (const auto& inst : instances) {
    if (trim(inst.passage).empty() || trim(inst.question).empty()) {
      r.lines.push_back("skipped " + inst.id + ": empty passage or question");
      continue;
    }
    passages.push_back(annotation::tokenize_fallback(inst.passage, data::passage_doc_id(inst.id)));
    questions.push_back(annotation::tokenize_fallback(inst.question, data::question_doc_id(inst.id)));
  }
  write_text(out / "passages.conllu", annotation::write_conllu(passages));
  write_text(out / "questions.conllu", annotation::write_conllu(questions));
  r.metrics = "documents=" + std::to_string(passages.size() + questions.size());
  return r;
}

CommandResult calibrate(const PipelineConfig& config) {
  const auto labeled = labeled_features(config);
  const fs::path out = prepare_output(config);
  auto normalizer = estimator::fit_normalizer(labeled.features);
  std::vector<double> scores;
  scores.reserve(labeled.features.size());
  for (const auto& f : labeled.features) scores.push_back(estimator::estimate(f, normalizer).score);
  const auto cal = estimator::calibrate_threshold(scores, labeled.gold);
  normalizer.lambda = cal.lambda;
  estimator::save_normalizer(normalizer, out / "normalizer.txt");

  CommandResult r;
  for (const auto& s : labeled.skipped) r.lines.push_back("skipped " + s);
  r.metrics = "lambda=" + fixed(cal.lambda) + " macro_f1=" + fixed(cal.macro_f1) +
              " items=" + std::to_string(labeled.features.size());
  return r;
}

CommandResult label(const PipelineConfig& config) {
  const auto instances = data::read_records(config.require("records"));
  const auto annotations = load_annotations(config.require("annotations"));
  auto normalizer = estimator::load_normalizer(config.require("normalizer"));
  if (config.has("lambda")) normalizer.lambda = config.double_or("lambda", normalizer.lambda);
  const fs::path out = prepare_output(config);
  auto report = data::label_corpus(instances, normalizer, annotations, config.estimator_options(),
                                   config.threads());
  data::write_records(report.instances, out / "labeled.jsonl");

  CommandResult r;
  for (const auto& s : report.skipped) r.lines.push_back("skipped " + s);
  r.metrics = "simple=" + std::to_string(report.simple) + " complex=" + std::to_string(report.complex) +
              " skipped=" + std::to_string(report.skipped.size());
  return r;
}

CommandResult eval_estimator(const PipelineConfig& config) {
  auto normalizer = estimator::load_normalizer(config.require("normalizer"));
  if (config.has("lambda")) normalizer.lambda = config.double_or("lambda", normalizer.lambda);
  const auto labeled = labeled_features(config);
  const fs::path out = prepare_output(config);
  std::vector<ComplexityLabel> predicted;
  for (const auto& f : labeled.features) predicted.push_back(estimator::estimate(f, normalizer).label);
  const auto e = estimator::evaluate_estimator(predicted, labeled.gold);
  json j = evaluation_json(e);
  j["lambda"] = normalizer.lambda;
  j["items"] = labeled.features.size();
  write_text(out / "estimator_eval.json", j.dump(2) + "\n");

  CommandResult r;
  for (const auto& s : labeled.skipped) r.lines.push_back("skipped " + s);
  r.metrics = "macro_f1=" + fixed(e.macro_f1) + " weighted_f1=" + fixed(e.weighted_f1) +
              " items=" + std::to_string(labeled.features.size());
  return r;
}

CommandResult cluster_templates(const PipelineConfig& config) {
  const auto examples = train::make_examples(data::read_records(config.require("records")));
  const auto mc = config.model_config();
  const auto tc = config.train_config();
  const fs::path out = prepare_output(config);
  const auto embedder = train::make_embedder(tc, mc.dim_template);
  std::ostringstream text;
  text << "# level values...\n";
  text.precision(17);
  for (ComplexityLabel level : {ComplexityLabel::Simple, ComplexityLabel::Complex}) {
    for (const auto& row : train::init_template_bank(examples, level, mc.n_pi, embedder, tc)) {
      text << label_name(level);
      for (double v : row) text << ' ' << v;
      text << '\n';
    }
  }
  write_text(out / "templates.txt", text.str());
  CommandResult r;
  r.metrics = "rows_per_level=" + std::to_string(mc.n_pi) + " dim=" + std::to_string(mc.dim_template);
  return r;
}

CommandResult train(const PipelineConfig& config) {
  const auto train_instances = data::read_records(config.require("records"));
  const auto mc = config.model_config();
  auto tc = config.train_config();
  tc.threads = config.threads();
  const fs::path out = prepare_output(config);
  const auto train_set = train::make_examples(train_instances);
  const auto dev_set = config.has("dev") ? train::make_examples(data::read_records(config.require("dev")))
                                         : std::vector<train::TrainingExample>{};

  model::CcqgModel model(mc, data::build_vocab(train_instances, config.size_or("vocab_size", 20000)),
                         tc.seed);
  train::init_template_banks(model, train_set, tc);
  train::HardEmTrainer trainer(model, tc);
  const auto report = trainer.train(train_set, dev_set);
  model.save(out / "checkpoint");
  write_text(out / "train_report.tsv", train::format_report_tsv(report));

  CommandResult r;
  r.metrics = "epochs=" + std::to_string(report.epochs.size()) + " best_epoch=" +
              std::to_string(report.best_epoch) + " best_dev_nll=" + fixed(report.best_dev_nll) +
              " converged=" + (report.converged ? "true" : "false");
  return r;
}

CommandResult generate(const PipelineConfig& config) {
  const auto level = parse_label(config.require("complexity"));
  if (!level) throw UsageError("complexity must be simple or complex, got '" + config.require("complexity") + "'");
  const std::string input_path = config.require("input");
  const model::CcqgModel model = load_checkpoint(config);
  const fs::path out = prepare_output(config);

  json input;
  try {
    input = json::parse(read_text(input_path));
  } catch (const json::exception& e) {
    throw DataError(input_path + ": " + e.what());
  }
  if (!input.is_object() || !input.contains("passage") || !input.contains("answer") ||
      !input["passage"].is_string() || !input["answer"].is_string()) {
    throw DataError(input_path + ": expected an object with string fields 'passage' and 'answer'");
  }
  const auto source = model::SourceInput::from_text(input["passage"].get<std::string>(),
                                                    input["answer"].get<std::string>());
  if (source.passage.empty() || source.answer.empty()) throw DataError(input_path + ": empty passage or answer");
  const auto g = model.generate(source, *level);
  const std::string question = join(g.tokens, " ");

  json result;
  result["complexity"] = std::string(label_name(*level));
  result["question"] = question;
  result["expert"] = g.expert;
  result["expert_scores"] = g.expert_scores;
  write_text(out / "generated.json", result.dump(2) + "\n");

  CommandResult r;
  r.lines.push_back(question);
  r.metrics = "expert=" + std::to_string(g.expert) + " tokens=" + std::to_string(g.tokens.size());
  return r;
}

CommandResult eval_qg(const PipelineConfig& config) {
  const auto instances = data::read_records(config.require("records"));
  if (instances.empty()) throw DataError("eval-qg: no records");
  const model::CcqgModel model = load_checkpoint(config);
  auto normalizer = estimator::load_normalizer(config.require("normalizer"));
  if (config.has("lambda")) normalizer.lambda = config.double_or("lambda", normalizer.lambda);
  const GeneratedQuestionLabeler labeler(
      normalizer, config.estimator_options(),
      config.has("annotations") ? load_annotations(config.require("annotations")) : annotation::AnnotationIndex{});
  const fs::path out = prepare_output(config);

  std::vector<eval::Tokens> simple(instances.size());
  std::vector<eval::Tokens> complex(instances.size());
  std::vector<eval::Tokens> at_reference_level;
  std::vector<eval::Tokens> references;
  std::vector<std::string> questions;
  std::vector<ComplexityLabel> requested;
  std::ostringstream generations;

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const auto source = model::SourceInput::from_instance(inst);
    if (source.passage.empty() || source.answer.empty()) {
      throw DataError("eval-qg: instance " + inst.id + " has an empty passage or answer");
    }
    simple[i] = model.generate(source, ComplexityLabel::Simple).tokens;
    complex[i] = model.generate(source, ComplexityLabel::Complex).tokens;
    for (ComplexityLabel level : {ComplexityLabel::Simple, ComplexityLabel::Complex}) {
      const auto& tokens = level == ComplexityLabel::Simple ? simple[i] : complex[i];
      questions.push_back(join(tokens, " "));
      requested.push_back(level);
    }
    const auto ref_level = inst.training_label().value_or(ComplexityLabel::Simple);
    const auto& candidate = ref_level == ComplexityLabel::Simple ? simple[i] : complex[i];
    const auto reference = model_tokens(inst.question);
    if (!reference.empty()) {
      at_reference_level.push_back(candidate.empty() ? eval::Tokens{"<empty>"} : candidate);
      references.push_back(reference);
    }
    json g;
    g["id"] = inst.id;
    g["simple"] = join(simple[i], " ");
    g["complex"] = join(complex[i], " ");
    g["reference"] = inst.question;
    generations << g.dump() << '\n';
  }

  eval::EvalReport report;
  report.bleu4 = eval::bleu4(at_reference_level, references);
  report.rouge_l = references.empty() ? 0.0 : eval::rouge_l_corpus(at_reference_level, references);
  std::vector<ComplexityLabel> predicted;
  for (std::size_t k = 0; k < questions.size(); ++k) predicted.push_back(labeler(instances[k / 2], questions[k]));
  report.consistency = eval::consistency_f1(requested, predicted);
  report.diversity = eval::pairwise_diversity(simple, complex);
  report.references = references.size();
  report.pairs = instances.size();

  write_text(out / "generations.jsonl", generations.str());
  write_text(out / "eval_qg.json", report.to_json());
  write_text(out / "eval_qg.tsv", eval::EvalReport::tsv_header() + "\n" + report.tsv_row() + "\n");

  CommandResult r;
  r.metrics = "bleu4=" + fixed(report.bleu4) + " rouge_l=" + fixed(report.rouge_l) + " consistency_macro_f1=" +
              fixed(report.consistency.macro_f1) + " diversity=" + fixed(report.diversity);
  return r;
}

CommandResult gradcheck(const PipelineConfig& config) {
  const double step = config.double_or("gradcheck_step", 1e-4);
  if (!(step > 0.0)) throw UsageError("config key 'gradcheck_step' must be > 0");
  const auto check = model::check_model_gradients(model::micro_config(), model::micro_vocab(), config.seed(), step);

  CommandResult r;
  std::ostringstream text;
  for (const auto& [group, err] : check.by_group) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-12s %.3e", group.c_str(), err);
    r.lines.push_back(buf);
    text << buf << '\n';
  }
  char summary[96];
  std::snprintf(summary, sizeof(summary), "%.3e", check.max_relative_error);
  text << "max_relative_error " << summary << '\n';
  if (config.has("output_dir")) write_text(prepare_output(config) / "gradcheck.txt", text.str());
  if (!(check.max_relative_error < kGradcheckThreshold)) {
    throw NumericError("gradcheck failed: max relative error " + std::string(summary) + " >= 1e-4 (worst " +
                       check.worst_parameter + ")");
  }
  r.metrics = "max_relative_error=" + std::string(summary) + " checked=" + std::to_string(check.checked);
  return r;
}

}  // namespace ccqg::pipeline
