// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ccqg {

std::string to_lower(std::string_view text);
std::string trim(std::string_view text);
std::vector<std::string> split_whitespace(std::string_view text);
std::vector<std::string> split(std::string_view text, char delim);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with(std::string_view text, std::string_view prefix);

// Lowercased whitespace tokens; the tokenization the generator and the
// dataset pipeline share.
// Lowercased whitespace tokens with leading and trailing ASCII punctuation
// split off one character at a time ("(paris)." -> "(", "paris", ")", ".").
// Internal punctuation stays ("u.s", "3.5", "don't").
std::vector<std::string> model_tokens(std::string_view text);

}  // namespace ccqg
