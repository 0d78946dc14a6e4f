// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

namespace ccqg {

// FNV-1a; used wherever a seed or fingerprint must be stable across runs and
// platforms (std::hash is not).
inline std::uint64_t fnv1a(std::string_view text,
                           std::uint64_t basis = 14695981039346656037ull) {
  std::uint64_t h = basis;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view key) {
  std::uint64_t h = fnv1a(key) ^ (seed + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
  // splitmix64 finalizer
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return h;
}

}  // namespace ccqg
