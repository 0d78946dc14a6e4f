// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "nn/tensor.hpp"

namespace ccqg::nn {

// Named learnable tensors in insertion order. Names are unique and the order
// is the serialization order.
class ParameterStore {
 public:
  // Initializes values uniformly in [-scale, scale] from a generator seeded by
  // (seed, name) only, so one parameter's values never depend on which other
  // parameters exist.
  Tensor& add_uniform(const std::string& name, std::size_t rows, std::size_t cols, double scale,
                      std::uint64_t seed);
  Tensor& add(const std::string& name, Tensor value);

  bool contains(const std::string& name) const { return index_.count(name) > 0; }
  Tensor& get(const std::string& name);
  const Tensor& get(const std::string& name) const;

  std::size_t size() const { return tensors_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::vector<Tensor>& tensors() { return tensors_; }
  const std::vector<Tensor>& tensors() const { return tensors_; }

  void zero_grad();
  std::size_t scalar_count() const;

  // Deep copy of values into a new store (fresh leaves).
  ParameterStore clone() const;
  // Copies values from `other`; names and shapes must match.
  void assign_values(const ParameterStore& other);

 private:
  std::vector<std::string> names_;
  std::vector<Tensor> tensors_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Text checkpoint:
//   ccqg-params 1
//   <count>
//   then per parameter: "<name> <rows> <cols>" and one line of row-major
//   values printed with 17 significant digits (exact double round trip).
void save_parameters(const ParameterStore& store, const std::filesystem::path& path);
ParameterStore load_parameters(const std::filesystem::path& path);
std::string serialize_parameters(const ParameterStore& store);
ParameterStore parse_parameters(const std::string& text);

}  // namespace ccqg::nn
