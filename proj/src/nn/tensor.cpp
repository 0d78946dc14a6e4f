// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "nn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>
#include <utility>

#include "common/error.hpp"

namespace ccqg::nn {

namespace {

thread_local bool g_grad_enabled = true;

using NodePtr = std::shared_ptr<detail::Node>;

NodePtr make_node(std::size_t rows, std::size_t cols, std::vector<double> value) {
  auto node = std::make_shared<detail::Node>();
  node->rows = rows;
  node->cols = cols;
  node->value = std::move(value);
  return node;
}

// Wraps a freshly computed value; records parents and the backward rule only
// when recording is on and some operand tracks gradients.
Tensor make_result(std::size_t rows, std::size_t cols, std::vector<double> value,
                   std::vector<NodePtr> parents, std::function<void(detail::Node&)> backward) {
  auto node = make_node(rows, cols, std::move(value));
  bool track = g_grad_enabled &&
               std::any_of(parents.begin(), parents.end(),
                           [](const NodePtr& p) { return p->requires_grad; });
  if (track) {
    node->requires_grad = true;
    node->parents = std::move(parents);
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

std::string shape_of(const Tensor& t) { return t.shape_string(); }

[[noreturn]] void shape_error(const char* op, const Tensor& a) {
  throw NumericError(std::string(op) + ": invalid operand shape " + shape_of(a));
}

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  throw NumericError(std::string(op) + ": shape mismatch " + shape_of(a) + " vs " + shape_of(b));
}

void require_defined(const char* op, const Tensor& t) {
  if (!t.defined()) throw NumericError(std::string(op) + ": undefined tensor");
}

// Adds g into the grad of parent i when that parent tracks gradients.
template <typename F>
void accumulate(detail::Node& self, std::size_t i, F&& fn) {
  auto& p = *self.parents[i];
  if (!p.requires_grad) return;
  p.ensure_grad();
  fn(p.grad);
}

}  // namespace

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

bool grad_enabled() { return g_grad_enabled; }

// ---- Tensor -----------------------------------------------------------------

Tensor Tensor::zeros(std::size_t rows, std::size_t cols) {
  return Tensor(make_node(rows, cols, std::vector<double>(rows * cols, 0.0)));
}

Tensor Tensor::filled(std::size_t rows, std::size_t cols, double value) {
  return Tensor(make_node(rows, cols, std::vector<double>(rows * cols, value)));
}

Tensor Tensor::from(std::size_t rows, std::size_t cols, std::vector<double> values) {
  if (values.size() != rows * cols) {
    throw NumericError("tensor: " + std::to_string(values.size()) + " values for shape [" +
                       std::to_string(rows) + "x" + std::to_string(cols) + "]");
  }
  return Tensor(make_node(rows, cols, std::move(values)));
}

Tensor Tensor::row(std::vector<double> values) {
  std::size_t n = values.size();
  return from(1, n, std::move(values));
}

Tensor Tensor::scalar(double value) { return from(1, 1, {value}); }

Tensor Tensor::parameter(std::size_t rows, std::size_t cols, std::vector<double> values) {
  Tensor t = from(rows, cols, std::move(values));
  t.node_->requires_grad = true;
  return t;
}

std::size_t Tensor::rows() const { return node_ ? node_->rows : 0; }
std::size_t Tensor::cols() const { return node_ ? node_->cols : 0; }
std::size_t Tensor::size() const { return node_ ? node_->value.size() : 0; }

std::string Tensor::shape_string() const {
  return "[" + std::to_string(rows()) + "x" + std::to_string(cols()) + "]";
}

std::span<const double> Tensor::values() const {
  if (!node_) return {};
  return node_->value;
}

std::span<double> Tensor::mutable_values() {
  if (!node_) return {};
  return node_->value;
}

std::span<const double> Tensor::grad() const {
  if (!node_) return {};
  return node_->grad;
}

double Tensor::at(std::size_t r, std::size_t c) const {
  if (!node_ || r >= node_->rows || c >= node_->cols) {
    throw NumericError("tensor: index (" + std::to_string(r) + "," + std::to_string(c) +
                       ") out of range for " + shape_string());
  }
  return node_->value[r * node_->cols + c];
}

double Tensor::item() const {
  if (size() != 1) throw NumericError("item: tensor is not a scalar " + shape_string());
  return node_->value[0];
}

bool Tensor::requires_grad() const { return node_ && node_->requires_grad; }

void Tensor::zero_grad() {
  if (node_) node_->grad.assign(node_->value.size(), 0.0);
}

Tensor Tensor::detach() const {
  require_defined("detach", *this);
  return from(rows(), cols(), node_->value);
}

void Tensor::backward() const {
  require_defined("backward", *this);
  if (size() != 1) throw NumericError("backward: loss must be a scalar, got " + shape_string());
  if (!node_->requires_grad) return;

  // Iterative post-order DFS gives a topological order (parents first).
  std::vector<detail::Node*> order;
  std::unordered_set<detail::Node*> visited;
  std::vector<std::pair<detail::Node*, std::size_t>> stack;
  stack.emplace_back(node_.get(), 0);
  visited.insert(node_.get());
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    if (next < n->parents.size()) {
      detail::Node* p = n->parents[next++].get();
      if (p->requires_grad && visited.insert(p).second) stack.emplace_back(p, 0);
    } else {
      order.push_back(n);
      stack.pop_back();
    }
  }

  for (detail::Node* n : order) {
    if (n->backward) n->grad.assign(n->value.size(), 0.0);
  }
  node_->ensure_grad();
  node_->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if ((*it)->backward) (*it)->backward(**it);
  }
}

// ---- linear algebra -----------------------------------------------------------

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_defined("matmul", a);
  require_defined("matmul", b);
  if (a.cols() != b.rows()) shape_error("matmul", a, b);
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<double> out(m * n, 0.0);
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = av[i * k + p];
      if (aip == 0.0) continue;
      const double* brow = &bv[p * n];
      double* orow = &out[i * n];
      for (std::size_t j = 0; j < n; ++j) orow[j] += aip * brow[j];
    }
  }
  return make_result(m, n, std::move(out), {a.node(), b.node()}, [m, k, n](detail::Node& self) {
    const auto& g = self.grad;
    const auto& av = self.parents[0]->value;
    const auto& bv = self.parents[1]->value;
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double gij = g[i * n + j];
          if (gij == 0.0) continue;
          for (std::size_t p = 0; p < k; ++p) ga[i * k + p] += gij * bv[p * n + j];
        }
    });
    accumulate(self, 1, [&](std::vector<double>& gb) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          const double aip = av[i * k + p];
          if (aip == 0.0) continue;
          for (std::size_t j = 0; j < n; ++j) gb[p * n + j] += aip * g[i * n + j];
        }
    });
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_defined("add", a);
  require_defined("add", b);
  const bool same = a.rows() == b.rows() && a.cols() == b.cols();
  const bool bias = !same && b.rows() == 1 && b.cols() == a.cols();
  if (!same && !bias) shape_error("add", a, b);
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<double> out(a.values().begin(), a.values().end());
  auto bv = b.values();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] += bv[same ? i * c + j : j];
  return make_result(r, c, std::move(out), {a.node(), b.node()}, [r, c, same](detail::Node& self) {
    const auto& g = self.grad;
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
    });
    accumulate(self, 1, [&](std::vector<double>& gb) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) gb[same ? i * c + j : j] += g[i * c + j];
    });
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_defined("sub", a);
  require_defined("sub", b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_error("sub", a, b);
  std::vector<double> out(a.size());
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] - bv[i];
  return make_result(a.rows(), a.cols(), std::move(out), {a.node(), b.node()},
                     [](detail::Node& self) {
                       const auto& g = self.grad;
                       accumulate(self, 0, [&](std::vector<double>& ga) {
                         for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
                       });
                       accumulate(self, 1, [&](std::vector<double>& gb) {
                         for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
                       });
                     });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_defined("mul", a);
  require_defined("mul", b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_error("mul", a, b);
  std::vector<double> out(a.size());
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  return make_result(a.rows(), a.cols(), std::move(out), {a.node(), b.node()},
                     [](detail::Node& self) {
                       const auto& g = self.grad;
                       const auto& av = self.parents[0]->value;
                       const auto& bv = self.parents[1]->value;
                       accumulate(self, 0, [&](std::vector<double>& ga) {
                         for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * bv[i];
                       });
                       accumulate(self, 1, [&](std::vector<double>& gb) {
                         for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * av[i];
                       });
                     });
}

Tensor scale(const Tensor& a, double factor) {
  require_defined("scale", a);
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v *= factor;
  return make_result(a.rows(), a.cols(), std::move(out), {a.node()},
                     [factor](detail::Node& self) {
                       accumulate(self, 0, [&](std::vector<double>& ga) {
                         for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += factor * self.grad[i];
                       });
                     });
}

Tensor scale_by(const Tensor& a, const Tensor& s) {
  require_defined("scale_by", a);
  require_defined("scale_by", s);
  if (s.size() != 1) shape_error("scale_by", a, s);
  const double sv = s.values()[0];
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v *= sv;
  return make_result(a.rows(), a.cols(), std::move(out), {a.node(), s.node()},
                     [](detail::Node& self) {
                       const auto& g = self.grad;
                       const auto& av = self.parents[0]->value;
                       const double sv = self.parents[1]->value[0];
                       accumulate(self, 0, [&](std::vector<double>& ga) {
                         for (std::size_t i = 0; i < g.size(); ++i) ga[i] += sv * g[i];
                       });
                       accumulate(self, 1, [&](std::vector<double>& gs) {
                         double acc = 0.0;
                         for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * av[i];
                         gs[0] += acc;
                       });
                     });
}

Tensor one_minus(const Tensor& a) {
  require_defined("one_minus", a);
  std::vector<double> out(a.size());
  auto av = a.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 - av[i];
  return make_result(a.rows(), a.cols(), std::move(out), {a.node()}, [](detail::Node& self) {
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] -= self.grad[i];
    });
  });
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw NumericError("concat_cols: no operands");
  const std::size_t r = parts.front().rows();
  std::size_t total = 0;
  std::vector<std::size_t> widths;
  std::vector<NodePtr> parents;
  for (const auto& p : parts) {
    require_defined("concat_cols", p);
    if (p.rows() != r) shape_error("concat_cols", parts.front(), p);
    widths.push_back(p.cols());
    total += p.cols();
    parents.push_back(p.node());
  }
  std::vector<double> out(r * total);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    auto pv = p.values();
    for (std::size_t i = 0; i < r; ++i)
      std::copy_n(&pv[i * p.cols()], p.cols(), &out[i * total + offset]);
    offset += p.cols();
  }
  return make_result(r, total, std::move(out), std::move(parents),
                     [r, total, widths](detail::Node& self) {
                       std::size_t offset = 0;
                       for (std::size_t k = 0; k < widths.size(); ++k) {
                         const std::size_t w = widths[k];
                         accumulate(self, k, [&](std::vector<double>& gp) {
                           for (std::size_t i = 0; i < r; ++i)
                             for (std::size_t j = 0; j < w; ++j)
                               gp[i * w + j] += self.grad[i * total + offset + j];
                         });
                         offset += w;
                       }
                     });
}

Tensor concat_rows(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw NumericError("concat_rows: no operands");
  const std::size_t c = parts.front().cols();
  std::vector<double> out;
  std::vector<std::size_t> sizes;
  std::vector<NodePtr> parents;
  std::size_t rows = 0;
  for (const auto& p : parts) {
    require_defined("concat_rows", p);
    if (p.cols() != c) shape_error("concat_rows", parts.front(), p);
    out.insert(out.end(), p.values().begin(), p.values().end());
    sizes.push_back(p.size());
    rows += p.rows();
    parents.push_back(p.node());
  }
  return make_result(rows, c, std::move(out), std::move(parents), [sizes](detail::Node& self) {
    std::size_t offset = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      accumulate(self, k, [&](std::vector<double>& gp) {
        for (std::size_t i = 0; i < sizes[k]; ++i) gp[i] += self.grad[offset + i];
      });
      offset += sizes[k];
    }
  });
}

Tensor transpose(const Tensor& a) {
  require_defined("transpose", a);
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<double> out(r * c);
  auto av = a.values();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[j * r + i] = av[i * c + j];
  return make_result(c, r, std::move(out), {a.node()}, [r, c](detail::Node& self) {
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) ga[i * c + j] += self.grad[j * r + i];
    });
  });
}

// ---- elementwise nonlinearities ----------------------------------------------

namespace {

// out = f(x); dx += g * df(x, out)
template <typename F, typename DF>
Tensor unary(const char* name, const Tensor& a, F f, DF df) {
  require_defined(name, a);
  std::vector<double> out(a.size());
  auto av = a.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(av[i]);
  return make_result(a.rows(), a.cols(), std::move(out), {a.node()}, [df](detail::Node& self) {
    const auto& x = self.parents[0]->value;
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += self.grad[i] * df(x[i], self.value[i]);
    });
  });
}

double stable_sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Tensor sigmoid(const Tensor& a) {
  return unary(
      "sigmoid", a, stable_sigmoid, [](double, double y) { return y * (1.0 - y); });
}

Tensor tanh(const Tensor& a) {
  return unary(
      "tanh", a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Tensor softplus(const Tensor& a) {
  return unary(
      "softplus", a, [](double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); },
      [](double x, double) { return stable_sigmoid(x); });
}

Tensor exp(const Tensor& a) {
  return unary(
      "exp", a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Tensor log(const Tensor& a) {
  return unary(
      "log", a, [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

// ---- row-wise normalizers ------------------------------------------------------

Tensor softmax(const Tensor& a) {
  return masked_softmax(a, std::vector<bool>(a.cols(), true));
}

Tensor masked_softmax(const Tensor& a, const std::vector<bool>& mask) {
  require_defined("softmax", a);
  const std::size_t r = a.rows(), c = a.cols();
  if (mask.size() != c) {
    throw NumericError("softmax: mask of length " + std::to_string(mask.size()) + " for " +
                       a.shape_string());
  }
  if (std::none_of(mask.begin(), mask.end(), [](bool m) { return m; })) {
    throw NumericError("softmax: mask selects no entries");
  }
  std::vector<double> out(r * c, 0.0);
  auto av = a.values();
  for (std::size_t i = 0; i < r; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c; ++j)
      if (mask[j]) mx = std::max(mx, av[i * c + j]);
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      if (!mask[j]) continue;
      out[i * c + j] = std::exp(av[i * c + j] - mx);
      total += out[i * c + j];
    }
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] /= total;
  }
  return make_result(r, c, std::move(out), {a.node()}, [r, c](detail::Node& self) {
    const auto& y = self.value;
    const auto& g = self.grad;
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < r; ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < c; ++j) dot += g[i * c + j] * y[i * c + j];
        for (std::size_t j = 0; j < c; ++j) ga[i * c + j] += y[i * c + j] * (g[i * c + j] - dot);
      }
    });
  });
}

Tensor log_softmax(const Tensor& a) {
  require_defined("log_softmax", a);
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<double> out(r * c);
  auto av = a.values();
  for (std::size_t i = 0; i < r; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c; ++j) mx = std::max(mx, av[i * c + j]);
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) total += std::exp(av[i * c + j] - mx);
    const double lse = mx + std::log(total);
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] = av[i * c + j] - lse;
  }
  return make_result(r, c, std::move(out), {a.node()}, [r, c](detail::Node& self) {
    const auto& y = self.value;
    const auto& g = self.grad;
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < r; ++i) {
        double gsum = 0.0;
        for (std::size_t j = 0; j < c; ++j) gsum += g[i * c + j];
        for (std::size_t j = 0; j < c; ++j)
          ga[i * c + j] += g[i * c + j] - std::exp(y[i * c + j]) * gsum;
      }
    });
  });
}

Tensor logsumexp(const Tensor& a) {
  require_defined("logsumexp", a);
  const std::size_t r = a.rows(), c = a.cols();
  if (c == 0) shape_error("logsumexp", a);
  std::vector<double> out(r);
  auto av = a.values();
  for (std::size_t i = 0; i < r; ++i) {
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c; ++j) mx = std::max(mx, av[i * c + j]);
    if (std::isinf(mx)) {
      out[i] = mx;
      continue;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < c; ++j) total += std::exp(av[i * c + j] - mx);
    out[i] = mx + std::log(total);
  }
  return make_result(r, 1, std::move(out), {a.node()}, [r, c](detail::Node& self) {
    const auto& x = self.parents[0]->value;
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < r; ++i) {
        if (std::isinf(self.value[i])) continue;
        for (std::size_t j = 0; j < c; ++j)
          ga[i * c + j] += self.grad[i] * std::exp(x[i * c + j] - self.value[i]);
      }
    });
  });
}

// ---- indexing -------------------------------------------------------------------

Tensor embedding(const Tensor& table, const std::vector<std::size_t>& indices) {
  require_defined("embedding", table);
  const std::size_t c = table.cols();
  std::vector<double> out(indices.size() * c);
  auto tv = table.values();
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= table.rows()) {
      throw NumericError("embedding: index " + std::to_string(indices[k]) + " out of range for " +
                         table.shape_string());
    }
    std::copy_n(&tv[indices[k] * c], c, &out[k * c]);
  }
  return make_result(indices.size(), c, std::move(out), {table.node()},
                     [indices, c](detail::Node& self) {
                       accumulate(self, 0, [&](std::vector<double>& gt) {
                         for (std::size_t k = 0; k < indices.size(); ++k)
                           for (std::size_t j = 0; j < c; ++j)
                             gt[indices[k] * c + j] += self.grad[k * c + j];
                       });
                     });
}

Tensor slice_rows(const Tensor& a, std::size_t start, std::size_t count) {
  require_defined("slice_rows", a);
  if (start + count > a.rows() || count == 0) shape_error("slice_rows", a);
  const std::size_t c = a.cols();
  std::vector<double> out(a.values().begin() + static_cast<std::ptrdiff_t>(start * c),
                          a.values().begin() + static_cast<std::ptrdiff_t>((start + count) * c));
  return make_result(count, c, std::move(out), {a.node()}, [start, c](detail::Node& self) {
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < self.grad.size(); ++i) ga[start * c + i] += self.grad[i];
    });
  });
}

Tensor slice_cols(const Tensor& a, std::size_t start, std::size_t count) {
  require_defined("slice_cols", a);
  if (start + count > a.cols() || count == 0) shape_error("slice_cols", a);
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<double> out(r * count);
  auto av = a.values();
  for (std::size_t i = 0; i < r; ++i) std::copy_n(&av[i * c + start], count, &out[i * count]);
  return make_result(r, count, std::move(out), {a.node()}, [r, c, start, count](detail::Node& self) {
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < count; ++j) ga[i * c + start + j] += self.grad[i * count + j];
    });
  });
}

Tensor sum(const Tensor& a) {
  require_defined("sum", a);
  double total = 0.0;
  for (double v : a.values()) total += v;
  return make_result(1, 1, {total}, {a.node()}, [](detail::Node& self) {
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (double& v : ga) v += self.grad[0];
    });
  });
}

Tensor pick(const Tensor& a, std::size_t r, std::size_t c) {
  const double v = a.at(r, c);
  const std::size_t flat = r * a.cols() + c;
  return make_result(1, 1, {v}, {a.node()}, [flat](detail::Node& self) {
    accumulate(self, 0, [&](std::vector<double>& ga) { ga[flat] += self.grad[0]; });
  });
}

Tensor nll_gather(const Tensor& log_probs, std::size_t index) {
  require_defined("nll_gather", log_probs);
  if (log_probs.rows() != 1 || index >= log_probs.cols()) shape_error("nll_gather", log_probs);
  return scale(pick(log_probs, 0, index), -1.0);
}

Tensor scatter_cols(const Tensor& a, const std::vector<std::size_t>& targets,
                    std::size_t out_cols) {
  require_defined("scatter_cols", a);
  if (a.rows() != 1 || targets.size() != a.cols()) shape_error("scatter_cols", a);
  std::vector<double> out(out_cols, 0.0);
  auto av = a.values();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= out_cols) {
      throw NumericError("scatter_cols: target " + std::to_string(targets[i]) +
                         " out of range " + std::to_string(out_cols));
    }
    out[targets[i]] += av[i];
  }
  return make_result(1, out_cols, std::move(out), {a.node()}, [targets](detail::Node& self) {
    accumulate(self, 0, [&](std::vector<double>& ga) {
      for (std::size_t i = 0; i < targets.size(); ++i) ga[i] += self.grad[targets[i]];
    });
  });
}

}  // namespace ccqg::nn
