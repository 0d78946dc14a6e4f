// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense row-major 2-D tensors with reverse-mode automatic differentiation.
//
// Every tensor is rank 2 (a row vector is 1 x n). An op whose operands track
// gradients records a backward rule on its result node; Tensor::backward()
// walks the recorded graph in reverse topological order and accumulates
// gradients into every tracked ancestor. Leaves (parameters) keep their
// gradients across calls until zero_grad(); interior nodes are reset on each
// backward pass.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ccqg::nn {

class Tensor;

namespace detail {

struct Node {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> value;
  std::vector<double> grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  // Propagates this node's grad into its parents' grads.
  std::function<void(Node&)> backward;

  void ensure_grad() {
    if (grad.size() != value.size()) grad.assign(value.size(), 0.0);
  }
};

}  // namespace detail

// Disables graph recording on the current thread while alive.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_enabled();

class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::size_t rows, std::size_t cols);
  static Tensor filled(std::size_t rows, std::size_t cols, double value);
  static Tensor from(std::size_t rows, std::size_t cols, std::vector<double> values);
  static Tensor row(std::vector<double> values);
  static Tensor scalar(double value);
  // A leaf that tracks gradients.
  static Tensor parameter(std::size_t rows, std::size_t cols, std::vector<double> values);

  bool defined() const { return node_ != nullptr; }
  std::size_t rows() const;
  std::size_t cols() const;
  std::size_t size() const;
  std::vector<std::size_t> shape() const { return {rows(), cols()}; }
  std::string shape_string() const;

  std::span<const double> values() const;
  std::span<double> mutable_values();
  // Empty when no gradient has been accumulated.
  std::span<const double> grad() const;
  double at(std::size_t r, std::size_t c) const;
  double item() const;

  bool requires_grad() const;
  void zero_grad();
  void backward() const;

  // A value copy that does not track gradients.
  Tensor detach() const;

  const std::shared_ptr<detail::Node>& node() const { return node_; }
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<detail::Node> node_;
};

// ---- ops -------------------------------------------------------------------
// All ops throw ccqg::NumericError naming the op and operand shapes on a shape
// mismatch.

Tensor matmul(const Tensor& a, const Tensor& b);
// Same shape, or b a 1 x cols row added to every row of a.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
// s is 1 x 1; returns s * a.
Tensor scale_by(const Tensor& a, const Tensor& s);
Tensor one_minus(const Tensor& a);
Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor concat_rows(const std::vector<Tensor>& parts);
Tensor transpose(const Tensor& a);

Tensor sigmoid(const Tensor& a);
Tensor tanh(const Tensor& a);
Tensor softplus(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);

Tensor softmax(const Tensor& a);
Tensor log_softmax(const Tensor& a);
// Softmax over the entries of each row whose mask is true; masked entries are
// exactly 0 and receive no gradient. Requires one true entry per row.
Tensor masked_softmax(const Tensor& a, const std::vector<bool>& mask);
// Row-wise, returns rows x 1.
Tensor logsumexp(const Tensor& a);

// Gathers rows of `table` (embedding lookup); returns indices.size() x cols.
Tensor embedding(const Tensor& table, const std::vector<std::size_t>& indices);
Tensor slice_rows(const Tensor& a, std::size_t start, std::size_t count);
Tensor slice_cols(const Tensor& a, std::size_t start, std::size_t count);
Tensor sum(const Tensor& a);
Tensor pick(const Tensor& a, std::size_t r, std::size_t c);
// -log_probs[0, index] for a 1 x V row of log-probabilities.
Tensor nll_gather(const Tensor& log_probs, std::size_t index);
// out[0, targets[i]] += a[0, i]; a is 1 x n, result 1 x out_cols.
Tensor scatter_cols(const Tensor& a, const std::vector<std::size_t>& targets,
                    std::size_t out_cols);

}  // namespace ccqg::nn
