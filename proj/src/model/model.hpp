// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Complexity-controllable question generator: BiLSTM passage and answer
// encoders, an additive-attention LSTM decoder conditioned on a complexity
// embedding and an expert embedding, a soft-template context chosen by a noisy
// top-k gate over the template bank of the requested complexity level, and a
// pointer-generator output layer.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "common/label.hpp"
#include "data/dataset.hpp"
#include "nn/parameters.hpp"
#include "nn/tensor.hpp"

namespace ccqg::model {

struct ModelConfig {
  std::size_t n_z = 3;
  std::size_t n_pi = 12;  // template elements per complexity level
  std::size_t top_k = 4;
  std::size_t dim_complexity = 30;
  std::size_t dim_expert = 50;
  std::size_t dim_template = 50;
  std::size_t hidden = 256;  // decoder state; encoders use hidden / 2 per direction
  std::size_t word_dim = 128;
  std::size_t max_decode_len = 30;
  bool use_moe = true;
  bool use_templates = true;
  bool length_normalize = false;
  double init_scale = 0.1;

  // Throws ccqg::UsageError naming the offending field.
  void validate() const;
  // Experts that take part in decoding and training (1 without the mixture).
  std::size_t active_experts() const { return use_moe ? n_z : 1; }

  std::map<std::string, std::string> to_map() const;
  // Unknown keys are ignored; present keys must parse.
  static ModelConfig from_map(const std::map<std::string, std::string>& values);
};

// Base vocabulary plus the passage tokens it lacks. Copy targets for those
// tokens live at ids base_size() + k.
class ExtendedVocab {
 public:
  ExtendedVocab(const data::Vocab& vocab, const std::vector<std::string>& passage);

  std::size_t size() const { return base_size_ + oov_.size(); }
  std::size_t base_size() const { return base_size_; }
  // Encoder inputs (passage OOVs map to UNK).
  const std::vector<std::size_t>& passage_input_ids() const { return input_ids_; }
  // Copy targets of each passage position.
  const std::vector<std::size_t>& passage_extended_ids() const { return extended_ids_; }
  // Base id, else the passage-OOV id, else UNK.
  std::size_t target_id(std::string_view token) const;
  // Embedding row for a previously emitted id (passage OOVs map to UNK).
  std::size_t input_id(std::size_t extended_id) const;
  std::string token(std::size_t extended_id) const;

 private:
  const data::Vocab* vocab_;
  std::size_t base_size_;
  std::vector<std::string> oov_;
  std::unordered_map<std::string, std::size_t> oov_ids_;
  std::vector<std::size_t> input_ids_;
  std::vector<std::size_t> extended_ids_;
};

// One (passage, answer) input in model token space.
struct SourceInput {
  std::vector<std::string> passage;
  std::vector<std::string> answer;

  // Answer tokens are the passage tokens under `span`.
  static SourceInput from_instance(const data::QAInstance& instance);
  static SourceInput from_text(std::string_view passage, std::string_view answer);
};

enum class EncoderKind { Passage, Answer };

struct BiLstmOutput {
  nn::Tensor states;   // n x hidden, forward || backward per position
  nn::Tensor summary;  // 1 x hidden, final forward || final backward
};

struct EncoderOutput {
  nn::Tensor states;          // n_X x hidden
  nn::Tensor final_state;     // 1 x hidden, the last passage position
  nn::Tensor answer_summary;  // 1 x hidden
  nn::Tensor attention_keys;  // states projected by the attention key matrix
};

struct DecoderState {
  nn::Tensor hidden;            // 1 x hidden
  nn::Tensor cell;              // 1 x hidden
  nn::Tensor context;           // passage attention context of the last step
  nn::Tensor attention;         // 1 x n_X weights of the last step
  nn::Tensor template_context;  // 1 x dim_template
  nn::Tensor gate;              // 1 x n_pi gate weights (undefined without templates)
  std::size_t step = 0;
};

// Gate noise is drawn from `rng` when set (training); null disables it.
struct GateNoise {
  std::mt19937_64* rng = nullptr;
};

struct Generation {
  std::vector<std::string> tokens;
  std::size_t expert = 0;
  std::vector<double> expert_scores;
  std::vector<std::vector<std::string>> candidates;
};

// Mask keeping the k largest entries; ties go to the lower index.
std::vector<bool> top_k_mask(std::span<const double> values, std::size_t k);
// Softmax over the top-k logits of a 1 x n row; other entries are 0.
nn::Tensor gate_weights(const nn::Tensor& logits, std::size_t k);
// p_gen * P_vocab (padded to the extended size) + (1 - p_gen) * attention
// mass summed per extended id.
nn::Tensor pointer_mixture(const nn::Tensor& vocab_probs, const nn::Tensor& attention,
                           const ExtendedVocab& ext, const nn::Tensor& p_gen);

struct ParameterShape {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

class CcqgModel {
 public:
  // Fresh parameters; each tensor's values depend only on (seed, name).
  CcqgModel(ModelConfig config, data::Vocab vocab, std::uint64_t seed);
  // Wraps existing parameters; names and shapes are checked.
  CcqgModel(ModelConfig config, data::Vocab vocab, nn::ParameterStore parameters);

  const ModelConfig& config() const { return config_; }
  const data::Vocab& vocab() const { return vocab_; }
  nn::ParameterStore& parameters() { return params_; }
  const nn::ParameterStore& parameters() const { return params_; }

  static std::string template_parameter(ComplexityLabel level);
  void set_template_bank(ComplexityLabel level, const std::vector<std::vector<double>>& rows);

  BiLstmOutput bilstm_encode(const std::vector<std::size_t>& ids, EncoderKind which) const;
  EncoderOutput encode(const ExtendedVocab& ext, const SourceInput& source) const;

  // Returns (context, weights).
  std::pair<nn::Tensor, nn::Tensor> attention_context(const nn::Tensor& previous_hidden,
                                                      const EncoderOutput& encoder) const;
  DecoderState init_decoder_state(const EncoderOutput& encoder, ComplexityLabel level,
                                  std::size_t expert) const;
  // Returns (template context, gate weights).
  std::pair<nn::Tensor, nn::Tensor> template_context(const nn::Tensor& context,
                                                     const nn::Tensor& answer_summary,
                                                     ComplexityLabel level, std::size_t expert,
                                                     GateNoise noise) const;
  DecoderState decoder_step(std::size_t previous_id, const DecoderState& state,
                            const EncoderOutput& encoder, const ExtendedVocab& ext,
                            ComplexityLabel level, std::size_t expert, GateNoise noise) const;
  // Distribution over the extended vocabulary after `state`, whose input was
  // `previous_id`.
  nn::Tensor output_distribution(const DecoderState& state, std::size_t previous_id,
                                 const ExtendedVocab& ext) const;

  // log p(question + EOS | passage, answer, level, expert) under teacher forcing.
  nn::Tensor sequence_log_prob(const SourceInput& source, const std::vector<std::string>& question,
                               ComplexityLabel level, std::size_t expert,
                               GateNoise noise = {}) const;
  nn::Tensor sequence_log_prob(const EncoderOutput& encoder, const ExtendedVocab& ext,
                               const std::vector<std::string>& question, ComplexityLabel level,
                               std::size_t expert, GateNoise noise = {}) const;
  // Noise-free log-likelihood under each active expert; encodes once.
  std::vector<double> expert_log_probs(const SourceInput& source,
                                       const std::vector<std::string>& question,
                                       ComplexityLabel level) const;
  // log sum_z p(Y | X, A, level, z) / n_z over the active experts.
  double mixture_log_prob(const SourceInput& source, const std::vector<std::string>& question,
                          ComplexityLabel level) const;

  // Greedy decode per active expert (noise off); the candidate with the highest
  // joint log-probability wins, ties to the lowest expert.
  Generation generate(const SourceInput& source, ComplexityLabel level) const;

  // Checkpoint directory: params.txt, vocab.txt, manifest.txt.
  void save(const std::filesystem::path& directory) const;
  static CcqgModel load(const std::filesystem::path& directory);

 private:
  std::vector<ParameterShape> parameter_shapes() const;
  void register_parameters(std::uint64_t seed);
  void check_parameters() const;
  const nn::Tensor& p(const char* name) const { return params_.get(name); }
  nn::Tensor expert_embedding(std::size_t expert) const;
  nn::Tensor complexity_embedding(ComplexityLabel level) const;
  std::pair<nn::Tensor, nn::Tensor> lstm_cell(const nn::Tensor& input_projection,
                                              const nn::Tensor& hidden, const nn::Tensor& cell,
                                              const nn::Tensor& recurrent_weights,
                                              std::size_t width) const;

  ModelConfig config_;
  data::Vocab vocab_;
  nn::ParameterStore params_;
};

}  // namespace ccqg::model
