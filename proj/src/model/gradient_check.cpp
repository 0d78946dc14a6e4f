// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "model/gradient_check.hpp"

#include <algorithm>
#include <random>

#include "common/hash.hpp"

namespace ccqg::model {

ModelConfig micro_config() {
  ModelConfig c;
  c.n_z = 2;
  c.n_pi = 3;
  c.top_k = 2;
  c.dim_complexity = 4;
  c.dim_expert = 4;
  c.dim_template = 4;
  c.hidden = 8;
  c.word_dim = 4;
  c.max_decode_len = 8;
  c.init_scale = 0.5;
  return c;
}

data::Vocab micro_vocab() {
  return data::Vocab({"what", "is", "the", "river", "city", "name", "of", "?", "a", "in",
                      "north", "that", "flows", "old", "blue", "."});
}

ModelGradCheck check_model_gradients(const ModelConfig& config, const data::Vocab& vocab,
                                     std::uint64_t seed, double h) {
  CcqgModel model(config, vocab, seed);
  const SourceInput source = SourceInput::from_text("the river of the old city flows north zeta .", "zeta");
  const std::vector<std::string> question{"what", "is", "the", "zeta", "river", "?"};
  const std::uint64_t noise_seed = mix_seed(seed, "gradcheck-noise");

  auto loss = [&] {
    std::mt19937_64 rng(noise_seed);
    nn::Tensor total;
    for (ComplexityLabel level : {ComplexityLabel::Simple, ComplexityLabel::Complex}) {
      for (std::size_t z = 0; z < config.active_experts(); ++z) {
        nn::Tensor nll = nn::scale(model.sequence_log_prob(source, question, level, z, GateNoise{&rng}), -1.0);
        total = total.defined() ? nn::add(total, nll) : nll;
      }
    }
    return total;
  };

  ModelGradCheck out;
  const auto& store = model.parameters();
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& name = store.names()[i];
    nn::GradCheckResult r = nn::grad_check(loss, {store.tensors()[i]}, h);
    out.checked += r.checked;
    const std::string group = name.substr(0, name.find('.'));
    out.by_group[group] = std::max(out.by_group[group], r.max_relative_error);
    if (r.max_relative_error >= out.max_relative_error) {
      out.max_relative_error = r.max_relative_error;
      out.worst_parameter = name;
    }
  }
  return out;
}

}  // namespace ccqg::model
