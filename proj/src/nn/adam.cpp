// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "nn/adam.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace ccqg::nn {

void adam_step(std::vector<Tensor>& params, AdamState& state, const AdamOptions& options) {
  if (state.first_moment.empty() && state.step == 0) {
    for (const auto& p : params) {
      state.first_moment.emplace_back(p.size(), 0.0);
      state.second_moment.emplace_back(p.size(), 0.0);
    }
  }
  if (state.first_moment.size() != params.size() || state.second_moment.size() != params.size()) {
    throw NumericError("adam_step: state holds " + std::to_string(state.first_moment.size()) +
                       " moments for " + std::to_string(params.size()) + " parameters");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (state.first_moment[i].size() != params[i].size() ||
        state.second_moment[i].size() != params[i].size()) {
      throw NumericError("adam_step: moment shape mismatch for parameter " + std::to_string(i) +
                         " " + params[i].shape_string());
    }
    auto g = params[i].grad();
    if (!g.empty() && g.size() != params[i].size()) {
      throw NumericError("adam_step: gradient shape mismatch for parameter " + std::to_string(i));
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(options.beta1, t);
  const double c2 = 1.0 - std::pow(options.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto values = params[i].mutable_values();
    auto grad = params[i].grad();
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double g = grad.empty() ? 0.0 : grad[j];
      m[j] = options.beta1 * m[j] + (1.0 - options.beta1) * g;
      v[j] = options.beta2 * v[j] + (1.0 - options.beta2) * g * g;
      const double m_hat = m[j] / c1;
      const double v_hat = v[j] / c2;
      values[j] -= options.lr * m_hat / (std::sqrt(v_hat) + options.eps);
    }
  }
}

}  // namespace ccqg::nn
