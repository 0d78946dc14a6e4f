// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include "nn/parameters.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "common/error.hpp"
#include "common/hash.hpp"

namespace ccqg::nn {

namespace {
constexpr const char* kMagic = "ccqg-params";
constexpr int kVersion = 1;
}  // namespace

Tensor& ParameterStore::add_uniform(const std::string& name, std::size_t rows, std::size_t cols,
                                    double scale, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, name));
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> values(rows * cols);
  for (double& v : values) v = scale == 0.0 ? 0.0 : dist(rng);
  return add(name, Tensor::parameter(rows, cols, std::move(values)));
}

Tensor& ParameterStore::add(const std::string& name, Tensor value) {
  if (contains(name)) throw Error("parameter '" + name + "' already registered");
  if (!value.requires_grad()) {
    value = Tensor::parameter(value.rows(), value.cols(),
                              std::vector<double>(value.values().begin(), value.values().end()));
  }
  index_[name] = tensors_.size();
  names_.push_back(name);
  tensors_.push_back(std::move(value));
  return tensors_.back();
}

Tensor& ParameterStore::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unknown parameter '" + name + "'");
  return tensors_[it->second];
}

const Tensor& ParameterStore::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unknown parameter '" + name + "'");
  return tensors_[it->second];
}

void ParameterStore::zero_grad() {
  for (auto& t : tensors_) t.zero_grad();
}

std::size_t ParameterStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += t.size();
  return n;
}

ParameterStore ParameterStore::clone() const {
  ParameterStore out;
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& t = tensors_[i];
    out.add(names_[i], Tensor::parameter(t.rows(), t.cols(),
                                         std::vector<double>(t.values().begin(), t.values().end())));
  }
  return out;
}

void ParameterStore::assign_values(const ParameterStore& other) {
  if (other.size() != size()) throw Error("parameter stores differ in size");
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    const auto& src = other.get(names_[i]);
    auto dst = tensors_[i].mutable_values();
    if (src.size() != dst.size() || src.rows() != tensors_[i].rows()) {
      throw Error("parameter '" + names_[i] + "' shape mismatch: " + src.shape_string() + " vs " +
                  tensors_[i].shape_string());
    }
    std::copy(src.values().begin(), src.values().end(), dst.begin());
  }
}

std::string serialize_parameters(const ParameterStore& store) {
  std::string out = std::string(kMagic) + " " + std::to_string(kVersion) + "\n" +
                    std::to_string(store.size()) + "\n";
  char buf[40];
  for (std::size_t i = 0; i < store.size(); ++i) {
    const auto& t = store.tensors()[i];
    out += store.names()[i] + " " + std::to_string(t.rows()) + " " + std::to_string(t.cols()) + "\n";
    bool first = true;
    for (double v : t.values()) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      if (!first) out += ' ';
      out += buf;
      first = false;
    }
    out += '\n';
  }
  return out;
}

ParameterStore parse_parameters(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  int version = 0;
  std::size_t count = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw DataError("checkpoint: bad header");
  if (version != kVersion) throw DataError("checkpoint: unsupported version " + std::to_string(version));
  if (!(in >> count)) throw DataError("checkpoint: missing parameter count");
  ParameterStore store;
  for (std::size_t i = 0; i < count; ++i) {
    std::string name;
    std::size_t rows = 0, cols = 0;
    if (!(in >> name >> rows >> cols)) {
      throw DataError("checkpoint: truncated entry " + std::to_string(i));
    }
    std::vector<double> values(rows * cols);
    for (double& v : values) {
      std::string tok;
      if (!(in >> tok)) throw DataError("checkpoint: truncated values for '" + name + "'");
      char* end = nullptr;
      v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        throw DataError("checkpoint: bad number '" + tok + "' in '" + name + "'");
      }
    }
    store.add(name, Tensor::parameter(rows, cols, std::move(values)));
  }
  return store;
}

void save_parameters(const ParameterStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  out << serialize_parameters(store);
  if (!out) throw DataError("failed writing checkpoint " + path.string());
}

ParameterStore load_parameters(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_parameters(ss.str());
}

}  // namespace ccqg::nn
