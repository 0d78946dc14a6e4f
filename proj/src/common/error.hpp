// Copyright 2026 The CCQG Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ccqg {

// Exception families map one-to-one onto the C API status codes and the CLI
// exit codes (usage = 1, data = 2, numeric = 3).

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace ccqg
