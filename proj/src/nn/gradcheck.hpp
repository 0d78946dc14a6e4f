// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nn/tensor.hpp"

namespace ccqg::nn {

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::size_t checked = 0;
  // Parameter index and flat element of the worst entry.
  std::size_t worst_param = 0;
  std::size_t worst_element = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

// Compares analytic gradients of `loss` (which must rebuild its graph on every
// call) against central differences (f(x+h) - f(x-h)) / 2h for every element
// of every tensor in `params`. Relative error is |a - n| / max(1e-8, |a| + |n|).
GradCheckResult grad_check(const std::function<Tensor()>& loss, std::vector<Tensor> params,
                           double h = 1e-5);

}  // namespace ccqg::nn
