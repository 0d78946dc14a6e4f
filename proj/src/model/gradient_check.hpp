// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "model/model.hpp"
#include "nn/gradcheck.hpp"

namespace ccqg::model {

// hidden 8, dims 4/4/4, vocabulary 20, n_z 2, n_pi 3, top-k 2.
ModelConfig micro_config();
// A 16-word base vocabulary (20 ids with the specials).
data::Vocab micro_vocab();

struct ModelGradCheck {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  std::string worst_parameter;
  // Parameter group (name up to the first '.') -> worst relative error.
  std::map<std::string, double> by_group;
};

// Finite-difference check of the summed NLL of a short question under both
// experts and both complexity levels, with a fixed gate-noise draw, over every
// parameter of a freshly initialized model.
ModelGradCheck check_model_gradients(const ModelConfig& config, const data::Vocab& vocab,
                                     std::uint64_t seed, double h = 1e-4);

}  // namespace ccqg::model
