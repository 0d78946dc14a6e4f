// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "data/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "common/error.hpp"
#include "common/parallel.hpp"
#include "common/text.hpp"

namespace ccqg::data {

using nlohmann::json;

namespace {

void warn(std::vector<std::string>* sink, std::string message) {
  if (sink) {
    sink->push_back(std::move(message));
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

const json& member(const json& object, const char* key, const std::string& path) {
  if (!object.is_object() || !object.contains(key)) {
    throw DataError(path + ": missing '" + key + "'");
  }
  return object.at(key);
}

std::string string_member(const json& object, const char* key, const std::string& path) {
  const json& v = member(object, key, path);
  if (!v.is_string()) throw DataError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QAInstance make_instance(std::string id, std::string passage, std::string question,
                         std::string answer) {
  QAInstance inst;
  inst.id = std::move(id);
  inst.passage = std::move(passage);
  inst.question = trim(question);
  inst.answer_text = trim(answer);
  inst.answer_span = find_answer_span(inst.passage, inst.answer_text);
  return inst;
}

void parse_squad(const json& root, std::vector<QAInstance>& out, std::vector<std::string>* warnings) {
  const json& data = member(root, "data", "$");
  if (!data.is_array()) throw DataError("$.data: expected an array");
  for (std::size_t a = 0; a < data.size(); ++a) {
    const std::string apath = "$.data[" + std::to_string(a) + "]";
    const json& paragraphs = member(data[a], "paragraphs", apath);
    if (!paragraphs.is_array()) throw DataError(apath + ".paragraphs: expected an array");
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
      const std::string ppath = apath + ".paragraphs[" + std::to_string(p) + "]";
      const std::string context = string_member(paragraphs[p], "context", ppath);
      const json& qas = member(paragraphs[p], "qas", ppath);
      if (!qas.is_array()) throw DataError(ppath + ".qas: expected an array");
      for (std::size_t q = 0; q < qas.size(); ++q) {
        const std::string qpath = ppath + ".qas[" + std::to_string(q) + "]";
        const std::string id = string_member(qas[q], "id", qpath);
        const std::string question = string_member(qas[q], "question", qpath);
        if (trim(question).empty()) {
          warn(warnings, qpath + " (" + id + "): empty question, skipped");
          continue;
        }
        const json& answers = member(qas[q], "answers", qpath);
        if (!answers.is_array()) throw DataError(qpath + ".answers: expected an array");
        if (answers.empty()) {
          warn(warnings, qpath + " (" + id + "): no answers, skipped");
          continue;
        }
        const std::string answer = string_member(answers[0], "text", qpath + ".answers[0]");
        out.push_back(make_instance(id, context, question, answer));
      }
    }
  }
}

void parse_hotpot(const json& root, std::vector<QAInstance>& out, std::vector<std::string>* warnings) {
  if (!root.is_array()) throw DataError("$: expected an array of records");
  for (std::size_t r = 0; r < root.size(); ++r) {
    const std::string rpath = "$[" + std::to_string(r) + "]";
    const json& rec = root[r];
    std::string id = rec.is_object() && rec.contains("_id") ? string_member(rec, "_id", rpath)
                                                            : string_member(rec, "id", rpath);
    const std::string question = string_member(rec, "question", rpath);
    if (trim(question).empty()) {
      warn(warnings, rpath + " (" + id + "): empty question, skipped");
      continue;
    }
    const std::string answer = string_member(rec, "answer", rpath);
    const json& context = member(rec, "context", rpath);
    if (!context.is_array()) throw DataError(rpath + ".context: expected an array");
    std::vector<std::string> sentences;
    for (std::size_t c = 0; c < context.size(); ++c) {
      const std::string cpath = rpath + ".context[" + std::to_string(c) + "]";
      const json& para = context[c];
      if (!para.is_array() || para.size() != 2 || !para[0].is_string() || !para[1].is_array()) {
        throw DataError(cpath + ": expected [title, [sentences]]");
      }
      for (const auto& s : para[1]) {
        if (!s.is_string()) throw DataError(cpath + ": sentence is not a string");
        std::string t = trim(s.get<std::string>());
        if (!t.empty()) sentences.push_back(std::move(t));
      }
    }
    QAInstance inst = make_instance(id, join(sentences, " "), question, answer);
    if (rec.contains("level")) {
      const json& level = rec.at("level");
      if (!level.is_string()) throw DataError(rpath + ".level: expected a string");
      const std::string l = level.get<std::string>();
      if (l == "easy") inst.gold_complexity = ComplexityLabel::Simple;
      else if (l == "hard") inst.gold_complexity = ComplexityLabel::Complex;
    }
    out.push_back(std::move(inst));
  }
}

std::optional<ComplexityLabel> label_from_json(const json& v, const char* key) {
  if (!v.contains(key) || v.at(key).is_null()) return std::nullopt;
  auto label = parse_label(v.at(key).get<std::string>());
  if (!label) throw DataError(std::string("record: bad label in '") + key + "'");
  return label;
}

}  // namespace

QaFormat parse_qa_format(std::string_view text) {
  if (text == "squad") return QaFormat::Squad;
  if (text == "hotpotqa") return QaFormat::HotpotQa;
  throw UsageError("corpus format must be 'squad' or 'hotpotqa', got '" + std::string(text) + "'");
}

std::optional<TokenRange> find_answer_span(std::string_view passage, std::string_view answer) {
  const auto p = model_tokens(passage);
  const auto a = model_tokens(answer);
  if (a.empty() || a.size() > p.size()) return std::nullopt;
  for (std::size_t i = 0; i + a.size() <= p.size(); ++i) {
    if (std::equal(a.begin(), a.end(), p.begin() + static_cast<std::ptrdiff_t>(i))) {
      return TokenRange{i, i + a.size()};
    }
  }
  return std::nullopt;
}

std::vector<QAInstance> parse_qa_json(std::string_view text, QaFormat format,
                                      std::vector<std::string>* warnings) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  std::vector<QAInstance> out;
  try {
    if (format == QaFormat::Squad) parse_squad(root, out, warnings);
    else parse_hotpot(root, out, warnings);
  } catch (const json::exception& e) {
    throw DataError(std::string("schema mismatch: ") + e.what());
  }
  return out;
}

std::vector<QAInstance> load_qa_json(const std::filesystem::path& path, QaFormat format,
                                     std::vector<std::string>* warnings) {
  try {
    return parse_qa_json(read_file(path), format, warnings);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

FilterResult filter_answerable(std::vector<QAInstance> instances) {
  FilterResult result;
  for (auto& inst : instances) {
    inst.answer_span = find_answer_span(inst.passage, inst.answer_text);
    if (inst.answer_span) result.kept.push_back(std::move(inst));
    else ++result.removed;
  }
  return result;
}

DatasetSplit split_dataset(std::vector<QAInstance> instances, std::uint64_t seed) {
  if (instances.size() < 10) {
    throw DataError("split_dataset: need at least 10 instances, got " +
                    std::to_string(instances.size()));
  }
  std::set<std::string> ids;
  for (const auto& inst : instances) {
    if (!ids.insert(inst.id).second) throw DataError("split_dataset: duplicate id '" + inst.id + "'");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(instances.begin(), instances.end(), rng);

  const std::size_t n = instances.size();
  const std::size_t train = n * 8 / 10;
  const std::size_t dev = (n - train) / 2;
  DatasetSplit split;
  split.seed = seed;
  auto it = std::make_move_iterator(instances.begin());
  split.train.assign(it, it + static_cast<std::ptrdiff_t>(train));
  split.dev.assign(it + static_cast<std::ptrdiff_t>(train),
                   it + static_cast<std::ptrdiff_t>(train + dev));
  split.test.assign(it + static_cast<std::ptrdiff_t>(train + dev), std::make_move_iterator(instances.end()));
  return split;
}

LabelReport label_corpus(const std::vector<QAInstance>& instances,
                         const estimator::FeatureNormalizer& normalizer,
                         const annotation::AnnotationIndex& annotations,
                         const estimator::EstimatorOptions& options, std::size_t threads) {
  std::vector<std::optional<estimator::Estimate>> results(instances.size());
  std::vector<std::string> errors(instances.size());
  parallel_for(instances.size(), threads, [&](std::size_t i) {
    try {
      results[i] = estimator::estimate(
          estimator::compute_raw_features(instances[i], annotations, options), normalizer);
    } catch (const DataError& e) {
      errors[i] = e.what();
    }
  });

  LabelReport report;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!results[i]) {
      report.skipped.push_back(instances[i].id + ": " + errors[i]);
      continue;
    }
    QAInstance labeled = instances[i];
    labeled.predicted_complexity = results[i]->label;
    (results[i]->label == ComplexityLabel::Simple ? report.simple : report.complex)++;
    report.instances.push_back(std::move(labeled));
    report.estimates.push_back(*results[i]);
  }
  return report;
}

std::string record_to_json(const QAInstance& inst) {
  json j;
  j["id"] = inst.id;
  j["passage"] = inst.passage;
  j["question"] = inst.question;
  j["answer"] = inst.answer_text;
  j["span"] = inst.answer_span ? json::array({inst.answer_span->begin, inst.answer_span->end})
                               : json(nullptr);
  j["gold"] = inst.gold_complexity ? json(std::string(label_name(*inst.gold_complexity))) : json(nullptr);
  j["predicted"] = inst.predicted_complexity
                       ? json(std::string(label_name(*inst.predicted_complexity)))
                       : json(nullptr);
  return j.dump();
}

QAInstance record_from_json(std::string_view line) {
  try {
    json j = json::parse(line);
    QAInstance inst;
    inst.id = j.at("id").get<std::string>();
    inst.passage = j.at("passage").get<std::string>();
    inst.question = j.at("question").get<std::string>();
    inst.answer_text = j.at("answer").get<std::string>();
    if (j.contains("span") && !j.at("span").is_null()) {
      inst.answer_span = TokenRange{j.at("span").at(0).get<std::size_t>(),
                                    j.at("span").at(1).get<std::size_t>()};
    } else {
      inst.answer_span = find_answer_span(inst.passage, inst.answer_text);
    }
    inst.gold_complexity = label_from_json(j, "gold");
    inst.predicted_complexity = label_from_json(j, "predicted");
    return inst;
  } catch (const json::exception& e) {
    throw DataError(std::string("record: ") + e.what());
  }
}

void write_records(const std::vector<QAInstance>& instances, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& inst : instances) out << record_to_json(inst) << '\n';
}

std::vector<QAInstance> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::vector<QAInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const DataError& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_split_manifest(const DatasetSplit& split, const std::filesystem::path& path) {
  auto ids = [](const std::vector<QAInstance>& v) {
    json a = json::array();
    for (const auto& inst : v) a.push_back(inst.id);
    return a;
  };
  json j;
  j["seed"] = split.seed;
  j["train"] = ids(split.train);
  j["dev"] = ids(split.dev);
  j["test"] = ids(split.test);
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

}  // namespace ccqg::data
