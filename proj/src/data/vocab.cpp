// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <map>

#include "common/error.hpp"
#include "common/hash.hpp"
#include "common/text.hpp"
#include "data/dataset.hpp"

namespace ccqg::data {

namespace {
const std::vector<std::string> kSpecials = {"<pad>", "<sos>", "<eos>", "<unk>"};
}

Vocab::Vocab() : Vocab(std::vector<std::string>{}) {}

Vocab::Vocab(const std::vector<std::string>& tokens) : tokens_(kSpecials) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) ids_.emplace(tokens_[i], i);
  for (const auto& t : tokens) {
    if (ids_.count(t)) throw DataError("vocab: duplicate token '" + t + "'");
    ids_.emplace(t, tokens_.size());
    tokens_.push_back(t);
  }
}

std::optional<std::size_t> Vocab::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocab::id(std::string_view token) const { return find(token).value_or(kUnk); }

std::uint64_t Vocab::fingerprint() const {
  std::uint64_t h = fnv1a("");
  for (const auto& t : tokens_) h = fnv1a(t + "\n", h);
  return h;
}

void Vocab::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write vocab " + path.string());
  for (const auto& t : tokens_) out << t << '\n';
}

Vocab Vocab::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read vocab " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.size() < kNumSpecials || !std::equal(kSpecials.begin(), kSpecials.end(), lines.begin())) {
    throw DataError("vocab " + path.string() + ": missing special tokens");
  }
  return Vocab(std::vector<std::string>(lines.begin() + kNumSpecials, lines.end()));
}

Vocab build_vocab(const std::vector<QAInstance>& instances, std::size_t max_size) {
  std::map<std::string, std::size_t> counts;
  for (const auto& inst : instances) {
    for (auto& t : model_tokens(inst.passage)) ++counts[t];
    for (auto& t : model_tokens(inst.question)) ++counts[t];
  }
  for (const auto& s : kSpecials) counts.erase(s);
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const std::size_t keep = max_size > Vocab::kNumSpecials ? max_size - Vocab::kNumSpecials : 0;
  if (ranked.size() > keep) ranked.resize(keep);
  std::vector<std::string> tokens;
  tokens.reserve(ranked.size());
  for (auto& [t, _] : ranked) tokens.push_back(t);
  return Vocab(tokens);
}

}  // namespace ccqg::data
