// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace ccqg::nn {

GradCheckResult grad_check(const std::function<Tensor()>& loss, std::vector<Tensor> params,
                           double h) {
  if (h <= 0.0) throw UsageError("grad_check: step must be positive");
  for (auto& p : params) p.zero_grad();
  loss().backward();

  std::vector<std::vector<double>> analytic;
  for (const auto& p : params) {
    auto g = p.grad();
    analytic.emplace_back(g.begin(), g.end());
    if (analytic.back().empty()) analytic.back().assign(p.size(), 0.0);
  }

  GradCheckResult result;
  NoGradGuard no_grad;
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto values = params[i].mutable_values();
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double original = values[j];
      values[j] = original + h;
      const double plus = loss().item();
      values[j] = original - h;
      const double minus = loss().item();
      values[j] = original;
      const double numeric = (plus - minus) / (2.0 * h);
      const double a = analytic[i][j];
      const double rel = std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric));
      if (!std::isfinite(rel)) throw NumericError("grad_check: non-finite loss");
      ++result.checked;
      if (rel > result.max_relative_error || result.checked == 1) {
        result.max_relative_error = std::max(result.max_relative_error, rel);
        if (rel >= result.max_relative_error) {
          result.worst_param = i;
          result.worst_element = j;
          result.worst_analytic = a;
          result.worst_numeric = numeric;
        }
      }
    }
  }
  return result;
}

}  // namespace ccqg::nn
