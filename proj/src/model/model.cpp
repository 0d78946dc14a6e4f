// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "model/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "common/error.hpp"
#include "common/text.hpp"

namespace ccqg::model {

using nn::Tensor;
using data::Vocab;

namespace {

constexpr const char* kManifestMagic = "ccqg-model 1";

std::size_t parse_size(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty() || value.front() == '-') {
    throw UsageError("config key '" + key + "': expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("config key '" + key + "': expected true/false, got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty()) {
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

// ---- ModelConfig ----------------------------------------------------------------

void ModelConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v < 1) throw UsageError(std::string("model config: ") + name + " must be >= 1");
  };
  positive(n_z, "n_z");
  positive(n_pi, "n_pi");
  positive(dim_complexity, "dim_complexity");
  positive(dim_expert, "dim_expert");
  positive(dim_template, "dim_template");
  positive(hidden, "hidden");
  positive(word_dim, "word_dim");
  positive(max_decode_len, "max_decode_len");
  if (top_k < 1 || top_k > n_pi) {
    throw UsageError("model config: top_k must satisfy 1 <= top_k <= n_pi (" + std::to_string(top_k) +
                     " vs " + std::to_string(n_pi) + ")");
  }
  if (hidden % 2 != 0) throw UsageError("model config: hidden must be even (two encoder directions)");
  if (!(init_scale >= 0.0)) throw UsageError("model config: init_scale must be non-negative");
}

std::map<std::string, std::string> ModelConfig::to_map() const {
  return {{"n_z", std::to_string(n_z)},
          {"n_pi", std::to_string(n_pi)},
          {"top_k", std::to_string(top_k)},
          {"dim_complexity", std::to_string(dim_complexity)},
          {"dim_expert", std::to_string(dim_expert)},
          {"dim_template", std::to_string(dim_template)},
          {"hidden", std::to_string(hidden)},
          {"word_dim", std::to_string(word_dim)},
          {"max_decode_len", std::to_string(max_decode_len)},
          {"use_moe", use_moe ? "true" : "false"},
          {"use_templates", use_templates ? "true" : "false"},
          {"length_normalize", length_normalize ? "true" : "false"},
          {"init_scale", format_double(init_scale)}};
}

ModelConfig ModelConfig::from_map(const std::map<std::string, std::string>& values) {
  ModelConfig c;
  auto size_field = [&](const char* key, std::size_t& field) {
    if (auto it = values.find(key); it != values.end()) field = parse_size(key, it->second);
  };
  auto bool_field = [&](const char* key, bool& field) {
    if (auto it = values.find(key); it != values.end()) field = parse_bool(key, it->second);
  };
  size_field("n_z", c.n_z);
  size_field("n_pi", c.n_pi);
  size_field("top_k", c.top_k);
  size_field("dim_complexity", c.dim_complexity);
  size_field("dim_expert", c.dim_expert);
  size_field("dim_template", c.dim_template);
  size_field("hidden", c.hidden);
  size_field("word_dim", c.word_dim);
  size_field("max_decode_len", c.max_decode_len);
  bool_field("use_moe", c.use_moe);
  bool_field("use_templates", c.use_templates);
  bool_field("length_normalize", c.length_normalize);
  if (auto it = values.find("init_scale"); it != values.end())
    c.init_scale = parse_double("init_scale", it->second);
  return c;
}

// ---- ExtendedVocab ------------------------------------------------------------------

ExtendedVocab::ExtendedVocab(const Vocab& vocab, const std::vector<std::string>& passage)
    : vocab_(&vocab), base_size_(vocab.size()) {
  for (const auto& token : passage) {
    if (auto id = vocab.find(token)) {
      input_ids_.push_back(*id);
      extended_ids_.push_back(*id);
      continue;
    }
    auto [it, inserted] = oov_ids_.emplace(token, base_size_ + oov_.size());
    if (inserted) oov_.push_back(token);
    input_ids_.push_back(Vocab::kUnk);
    extended_ids_.push_back(it->second);
  }
}

std::size_t ExtendedVocab::target_id(std::string_view token) const {
  if (auto id = vocab_->find(token)) return *id;
  if (auto it = oov_ids_.find(std::string(token)); it != oov_ids_.end()) return it->second;
  return Vocab::kUnk;
}

std::size_t ExtendedVocab::input_id(std::size_t extended_id) const {
  return extended_id < base_size_ ? extended_id : Vocab::kUnk;
}

std::string ExtendedVocab::token(std::size_t extended_id) const {
  if (extended_id < base_size_) return vocab_->token(extended_id);
  return oov_.at(extended_id - base_size_);
}

// ---- SourceInput ----------------------------------------------------------------------

SourceInput SourceInput::from_instance(const data::QAInstance& instance) {
  SourceInput s;
  s.passage = model_tokens(instance.passage);
  if (instance.answer_span && instance.answer_span->end <= s.passage.size() &&
      instance.answer_span->begin < instance.answer_span->end) {
    s.answer.assign(s.passage.begin() + static_cast<std::ptrdiff_t>(instance.answer_span->begin),
                    s.passage.begin() + static_cast<std::ptrdiff_t>(instance.answer_span->end));
  } else {
    s.answer = model_tokens(instance.answer_text);
  }
  return s;
}

SourceInput SourceInput::from_text(std::string_view passage, std::string_view answer) {
  return {model_tokens(passage), model_tokens(answer)};
}

// ---- free functions ---------------------------------------------------------------------

std::vector<bool> top_k_mask(std::span<const double> values, std::size_t k) {
  if (k < 1 || k > values.size()) {
    throw UsageError("top_k: k = " + std::to_string(k) + " outside [1, " +
                     std::to_string(values.size()) + "]");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<bool> mask(values.size(), false);
  for (std::size_t i = 0; i < k; ++i) mask[order[i]] = true;
  return mask;
}

Tensor gate_weights(const Tensor& logits, std::size_t k) {
  if (logits.rows() != 1) throw NumericError("gate_weights: expected a row, got " + logits.shape_string());
  return nn::masked_softmax(logits, top_k_mask(logits.values(), k));
}

Tensor pointer_mixture(const Tensor& vocab_probs, const Tensor& attention, const ExtendedVocab& ext,
                       const Tensor& p_gen) {
  if (vocab_probs.cols() != ext.base_size()) {
    throw NumericError("pointer_mixture: vocabulary distribution " + vocab_probs.shape_string() +
                       " for base size " + std::to_string(ext.base_size()));
  }
  std::vector<std::size_t> identity(ext.base_size());
  std::iota(identity.begin(), identity.end(), 0);
  Tensor generate = nn::scatter_cols(vocab_probs, identity, ext.size());
  Tensor copy = nn::scatter_cols(attention, ext.passage_extended_ids(), ext.size());
  return nn::add(nn::scale_by(generate, p_gen), nn::scale_by(copy, nn::one_minus(p_gen)));
}

// ---- CcqgModel ---------------------------------------------------------------------------

CcqgModel::CcqgModel(ModelConfig config, Vocab vocab, std::uint64_t seed)
    : config_(std::move(config)), vocab_(std::move(vocab)) {
  config_.validate();
  register_parameters(seed);
}

CcqgModel::CcqgModel(ModelConfig config, Vocab vocab, nn::ParameterStore parameters)
    : config_(std::move(config)), vocab_(std::move(vocab)), params_(std::move(parameters)) {
  config_.validate();
  check_parameters();
}

std::string CcqgModel::template_parameter(ComplexityLabel level) {
  return "template." + std::string(label_name(level));
}

std::vector<ParameterShape> CcqgModel::parameter_shapes() const {
  const auto& c = config_;
  const std::size_t he = c.hidden / 2;
  const std::size_t h = c.hidden;
  const std::size_t gate_in = h + h + c.dim_complexity + c.dim_expert;
  const std::size_t v = vocab_.size();

  std::vector<ParameterShape> shapes{{"embedding.word", v, c.word_dim}};
  for (const char* enc : {"encoder.passage", "encoder.answer"}) {
    for (const char* dir : {"fw", "bw"}) {
      const std::string base = std::string(enc) + "." + dir;
      shapes.push_back({base + ".wx", c.word_dim, 4 * he});
      shapes.push_back({base + ".wh", he, 4 * he});
      shapes.push_back({base + ".b", 1, 4 * he});
    }
  }
  shapes.insert(shapes.end(),
                {{"complexity.embedding", kNumLabels, c.dim_complexity},
                 {"expert.embedding", c.n_z, c.dim_expert},
                 {template_parameter(ComplexityLabel::Simple), c.n_pi, c.dim_template},
                 {template_parameter(ComplexityLabel::Complex), c.n_pi, c.dim_template},
                 {"init.hidden.w", gate_in, h},
                 {"init.hidden.b", 1, h},
                 {"init.cell.w", gate_in, h},
                 {"init.cell.b", 1, h},
                 {"attention.query", h, h},
                 {"attention.key", h, h},
                 {"attention.b", 1, h},
                 {"attention.v", h, 1},
                 {"gate.w", gate_in, c.n_pi},
                 {"gate.noise", gate_in, c.n_pi},
                 {"decoder.input.w", c.word_dim + h + c.dim_template + c.dim_expert, c.word_dim},
                 {"decoder.input.b", 1, c.word_dim},
                 {"decoder.lstm.wx", c.word_dim, 4 * h},
                 {"decoder.lstm.wh", h, 4 * h},
                 {"decoder.lstm.b", 1, 4 * h},
                 {"output.w", h + h, v},
                 {"output.b", 1, v},
                 {"pointer.context", h, 1},
                 {"pointer.state", h, 1},
                 {"pointer.input", c.word_dim, 1},
                 {"pointer.b", 1, 1}});
  return shapes;
}

void CcqgModel::register_parameters(std::uint64_t seed) {
  for (const auto& s : parameter_shapes()) {
    Tensor& t = params_.add_uniform(s.name, s.rows, s.cols, config_.init_scale, seed);
    // Forget gates start open.
    if (s.name == "decoder.lstm.b" || s.name.ends_with(".fw.b") || s.name.ends_with(".bw.b")) {
      const std::size_t width = s.cols / 4;
      auto values = t.mutable_values();
      for (std::size_t i = width; i < 2 * width; ++i) values[i] = 1.0;
    }
  }
}

void CcqgModel::check_parameters() const {
  const auto shapes = parameter_shapes();
  if (shapes.size() != params_.size()) {
    throw DataError("checkpoint holds " + std::to_string(params_.size()) + " parameters, model needs " +
                    std::to_string(shapes.size()));
  }
  for (const auto& s : shapes) {
    if (!params_.contains(s.name)) throw DataError("checkpoint lacks parameter '" + s.name + "'");
    const Tensor& have = params_.get(s.name);
    if (have.rows() != s.rows || have.cols() != s.cols) {
      throw DataError("parameter '" + s.name + "' has shape " + have.shape_string() + ", expected " +
                      std::to_string(s.rows) + "x" + std::to_string(s.cols));
    }
  }
}

void CcqgModel::set_template_bank(ComplexityLabel level, const std::vector<std::vector<double>>& rows) {
  Tensor& bank = params_.get(template_parameter(level));
  if (rows.size() != bank.rows()) {
    throw UsageError("template bank needs " + std::to_string(bank.rows()) + " rows, got " +
                     std::to_string(rows.size()));
  }
  auto values = bank.mutable_values();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != bank.cols()) {
      throw UsageError("template row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                       " values, expected " + std::to_string(bank.cols()));
    }
    std::copy(rows[r].begin(), rows[r].end(), values.begin() + static_cast<std::ptrdiff_t>(r * bank.cols()));
  }
}

Tensor CcqgModel::expert_embedding(std::size_t expert) const {
  if (expert >= config_.n_z) {
    throw UsageError("expert index " + std::to_string(expert) + " >= n_z = " + std::to_string(config_.n_z));
  }
  if (!config_.use_moe) return Tensor::zeros(1, config_.dim_expert);
  return nn::embedding(p("expert.embedding"), {expert});
}

Tensor CcqgModel::complexity_embedding(ComplexityLabel level) const {
  return nn::embedding(p("complexity.embedding"), {label_index(level)});
}

std::pair<Tensor, Tensor> CcqgModel::lstm_cell(const Tensor& input_projection, const Tensor& hidden,
                                               const Tensor& cell, const Tensor& recurrent_weights,
                                               std::size_t width) const {
  Tensor gates = nn::add(input_projection, nn::matmul(hidden, recurrent_weights));
  Tensor in = nn::sigmoid(nn::slice_cols(gates, 0, width));
  Tensor forget = nn::sigmoid(nn::slice_cols(gates, width, width));
  Tensor candidate = nn::tanh(nn::slice_cols(gates, 2 * width, width));
  Tensor out = nn::sigmoid(nn::slice_cols(gates, 3 * width, width));
  Tensor next_cell = nn::add(nn::mul(forget, cell), nn::mul(in, candidate));
  Tensor next_hidden = nn::mul(out, nn::tanh(next_cell));
  return {next_hidden, next_cell};
}

BiLstmOutput CcqgModel::bilstm_encode(const std::vector<std::size_t>& ids, EncoderKind which) const {
  if (ids.empty()) throw DataError("bilstm_encode: empty input sequence");
  const std::string base = which == EncoderKind::Passage ? "encoder.passage" : "encoder.answer";
  const std::size_t he = config_.hidden / 2;
  const std::size_t n = ids.size();
  Tensor embedded = nn::embedding(p("embedding.word"), ids);

  auto run = [&](const std::string& dir, bool reverse) {
    Tensor projected = nn::add(nn::matmul(embedded, params_.get(base + "." + dir + ".wx")),
                               params_.get(base + "." + dir + ".b"));
    const Tensor& wh = params_.get(base + "." + dir + ".wh");
    std::vector<Tensor> states(n);
    Tensor h = Tensor::zeros(1, he);
    Tensor c = Tensor::zeros(1, he);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t pos = reverse ? n - 1 - k : k;
      std::tie(h, c) = lstm_cell(nn::slice_rows(projected, pos, 1), h, c, wh, he);
      states[pos] = h;
    }
    return states;
  };
  auto forward = run("fw", false);
  auto backward = run("bw", true);

  std::vector<Tensor> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back(nn::concat_cols({forward[i], backward[i]}));
  return {nn::concat_rows(rows), nn::concat_cols({forward[n - 1], backward[0]})};
}

EncoderOutput CcqgModel::encode(const ExtendedVocab& ext, const SourceInput& source) const {
  if (source.passage.empty()) throw DataError("encode: empty passage");
  if (source.answer.empty()) throw DataError("encode: empty answer");
  EncoderOutput out;
  auto passage = bilstm_encode(ext.passage_input_ids(), EncoderKind::Passage);
  std::vector<std::size_t> answer_ids;
  for (const auto& t : source.answer) answer_ids.push_back(vocab_.id(t));
  auto answer = bilstm_encode(answer_ids, EncoderKind::Answer);
  out.states = passage.states;
  out.final_state = nn::slice_rows(passage.states, passage.states.rows() - 1, 1);
  out.answer_summary = answer.summary;
  out.attention_keys = nn::matmul(out.states, p("attention.key"));
  return out;
}

std::pair<Tensor, Tensor> CcqgModel::attention_context(const Tensor& previous_hidden,
                                                       const EncoderOutput& encoder) const {
  Tensor query = nn::add(nn::matmul(previous_hidden, p("attention.query")), p("attention.b"));
  Tensor energies = nn::tanh(nn::add(encoder.attention_keys, query));
  Tensor scores = nn::transpose(nn::matmul(energies, p("attention.v")));
  Tensor weights = nn::softmax(scores);
  return {nn::matmul(weights, encoder.states), weights};
}

DecoderState CcqgModel::init_decoder_state(const EncoderOutput& encoder, ComplexityLabel level,
                                           std::size_t expert) const {
  Tensor input = nn::concat_cols({encoder.final_state, encoder.answer_summary,
                                  complexity_embedding(level), expert_embedding(expert)});
  DecoderState s;
  s.hidden = nn::tanh(nn::add(nn::matmul(input, p("init.hidden.w")), p("init.hidden.b")));
  s.cell = nn::tanh(nn::add(nn::matmul(input, p("init.cell.w")), p("init.cell.b")));
  s.step = 0;
  return s;
}

std::pair<Tensor, Tensor> CcqgModel::template_context(const Tensor& context,
                                                      const Tensor& answer_summary,
                                                      ComplexityLabel level, std::size_t expert,
                                                      GateNoise noise) const {
  Tensor e_z = expert_embedding(expert);
  if (!config_.use_templates) return {Tensor::zeros(1, config_.dim_template), Tensor()};
  Tensor input = nn::concat_cols({context, answer_summary, complexity_embedding(level), e_z});
  Tensor logits = nn::matmul(input, p("gate.w"));
  if (noise.rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    std::vector<double> xi(config_.n_pi);
    for (double& v : xi) v = unit(*noise.rng);
    Tensor scale = nn::softplus(nn::matmul(input, p("gate.noise")));
    logits = nn::add(logits, nn::mul(Tensor::row(std::move(xi)), scale));
  }
  Tensor weights = gate_weights(logits, config_.top_k);
  const Tensor& bank = params_.get(template_parameter(level));
  return {nn::matmul(weights, bank), weights};
}

DecoderState CcqgModel::decoder_step(std::size_t previous_id, const DecoderState& state,
                                     const EncoderOutput& encoder, const ExtendedVocab& ext,
                                     ComplexityLabel level, std::size_t expert,
                                     GateNoise noise) const {
  auto [context, attention] = attention_context(state.hidden, encoder);
  auto [template_ctx, gate] = template_context(context, encoder.answer_summary, level, expert, noise);
  Tensor word = nn::embedding(p("embedding.word"), {ext.input_id(previous_id)});
  Tensor input = nn::concat_cols({word, context, template_ctx, expert_embedding(expert)});
  Tensor projected = nn::add(nn::matmul(input, p("decoder.input.w")), p("decoder.input.b"));
  Tensor gates_in = nn::add(nn::matmul(projected, p("decoder.lstm.wx")), p("decoder.lstm.b"));
  auto [hidden, cell] = lstm_cell(gates_in, state.hidden, state.cell, p("decoder.lstm.wh"),
                                  config_.hidden);
  DecoderState next;
  next.hidden = hidden;
  next.cell = cell;
  next.context = context;
  next.attention = attention;
  next.template_context = template_ctx;
  next.gate = gate;
  next.step = state.step + 1;
  return next;
}

Tensor CcqgModel::output_distribution(const DecoderState& state, std::size_t previous_id,
                                      const ExtendedVocab& ext) const {
  Tensor features = nn::concat_cols({state.hidden, state.context});
  Tensor vocab_probs = nn::softmax(nn::add(nn::matmul(features, p("output.w")), p("output.b")));
  Tensor word = nn::embedding(p("embedding.word"), {ext.input_id(previous_id)});
  Tensor gen_logit = nn::add(nn::add(nn::matmul(state.context, p("pointer.context")),
                                     nn::matmul(state.hidden, p("pointer.state"))),
                             nn::add(nn::matmul(word, p("pointer.input")), p("pointer.b")));
  return pointer_mixture(vocab_probs, state.attention, ext, nn::sigmoid(gen_logit));
}

Tensor CcqgModel::sequence_log_prob(const EncoderOutput& encoder, const ExtendedVocab& ext,
                                    const std::vector<std::string>& question, ComplexityLabel level,
                                    std::size_t expert, GateNoise noise) const {
  std::vector<std::size_t> targets;
  targets.reserve(question.size() + 1);
  for (const auto& t : question) targets.push_back(ext.target_id(t));
  targets.push_back(Vocab::kEos);

  DecoderState state = init_decoder_state(encoder, level, expert);
  std::size_t previous = Vocab::kSos;
  std::vector<Tensor> picked;
  picked.reserve(targets.size());
  for (std::size_t target : targets) {
    state = decoder_step(previous, state, encoder, ext, level, expert, noise);
    picked.push_back(nn::pick(output_distribution(state, previous, ext), 0, target));
    previous = target;
  }
  return nn::sum(nn::log(nn::concat_cols(picked)));
}

Tensor CcqgModel::sequence_log_prob(const SourceInput& source, const std::vector<std::string>& question,
                                    ComplexityLabel level, std::size_t expert, GateNoise noise) const {
  ExtendedVocab ext(vocab_, source.passage);
  return sequence_log_prob(encode(ext, source), ext, question, level, expert, noise);
}

std::vector<double> CcqgModel::expert_log_probs(const SourceInput& source,
                                                const std::vector<std::string>& question,
                                                ComplexityLabel level) const {
  nn::NoGradGuard no_grad;
  ExtendedVocab ext(vocab_, source.passage);
  EncoderOutput encoder = encode(ext, source);
  std::vector<double> out;
  for (std::size_t z = 0; z < config_.active_experts(); ++z)
    out.push_back(sequence_log_prob(encoder, ext, question, level, z).item());
  return out;
}

double CcqgModel::mixture_log_prob(const SourceInput& source, const std::vector<std::string>& question,
                                   ComplexityLabel level) const {
  const auto per_expert = expert_log_probs(source, question, level);
  const double best = *std::max_element(per_expert.begin(), per_expert.end());
  if (std::isinf(best)) return best;
  double total = 0.0;
  for (double v : per_expert) total += std::exp(v - best);
  return best + std::log(total) - std::log(static_cast<double>(per_expert.size()));
}

Generation CcqgModel::generate(const SourceInput& source, ComplexityLabel level) const {
  if (source.passage.empty()) throw DataError("generate: empty passage");
  nn::NoGradGuard no_grad;
  ExtendedVocab ext(vocab_, source.passage);
  EncoderOutput encoder = encode(ext, source);

  Generation result;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t z = 0; z < config_.active_experts(); ++z) {
    DecoderState state = init_decoder_state(encoder, level, z);
    std::size_t previous = Vocab::kSos;
    std::vector<std::string> tokens;
    double score = 0.0;
    std::size_t steps = 0;
    for (std::size_t t = 0; t < config_.max_decode_len; ++t) {
      state = decoder_step(previous, state, encoder, ext, level, z, {});
      Tensor dist = output_distribution(state, previous, ext);
      auto probs = dist.values();
      const auto argmax = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
      score += std::log(probs[argmax]);
      ++steps;
      if (argmax == Vocab::kEos) break;
      tokens.push_back(ext.token(argmax));
      previous = argmax;
    }
    if (config_.length_normalize && steps > 0) score /= static_cast<double>(steps);
    result.expert_scores.push_back(score);
    result.candidates.push_back(tokens);
    if (z == 0 || score > best) {
      best = score;
      result.expert = z;
      result.tokens = std::move(tokens);
    }
  }
  return result;
}

void CcqgModel::save(const std::filesystem::path& directory) const {
  std::filesystem::create_directories(directory);
  nn::save_parameters(params_, directory / "params.txt");
  vocab_.save(directory / "vocab.txt");
  std::ofstream out(directory / "manifest.txt");
  if (!out) throw DataError("cannot write manifest in " + directory.string());
  out << "# " << kManifestMagic << "\n";
  for (const auto& [k, v] : config_.to_map()) out << k << " = " << v << "\n";
  out << "vocab_size = " << vocab_.size() << "\n";
  out << "vocab_hash = " << vocab_.fingerprint() << "\n";
  out << "template_levels = " << label_name(ComplexityLabel::Simple) << ","
      << label_name(ComplexityLabel::Complex) << "\n";
}

CcqgModel CcqgModel::load(const std::filesystem::path& directory) {
  std::ifstream in(directory / "manifest.txt");
  if (!in) throw DataError("cannot read manifest in " + directory.string());
  std::map<std::string, std::string> values;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError("manifest: malformed line '" + line + "'");
    values[trim(std::string_view(line).substr(0, eq))] = trim(std::string_view(line).substr(eq + 1));
  }
  Vocab vocab = Vocab::load(directory / "vocab.txt");
  if (auto it = values.find("vocab_hash");
      it != values.end() && it->second != std::to_string(vocab.fingerprint())) {
    throw DataError("checkpoint " + directory.string() + ": vocabulary hash mismatch");
  }
  ModelConfig config = ModelConfig::from_map(values);
  return CcqgModel(config, std::move(vocab), nn::load_parameters(directory / "params.txt"));
}

}  // namespace ccqg::model
