// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "nn/tensor.hpp"

namespace ccqg::nn {

struct AdamOptions {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;
  std::int64_t step = 0;
};

// One bias-corrected Adam update over `params`, reading each tensor's
// accumulated gradient (a tensor without one counts as a zero gradient). The
// state is sized on first use; afterwards shapes must match.
void adam_step(std::vector<Tensor>& params, AdamState& state, const AdamOptions& options);

}  // namespace ccqg::nn
