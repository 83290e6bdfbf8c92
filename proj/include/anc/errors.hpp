// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed container (bad RIFF header, truncated chunk).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Well-formed container carrying something we do not decode.
class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Non-finite input or a filter state that lost its numerical invariants.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A NumericError raised while streaming, tagged with the failing block.
class StreamError : public NumericError {
 public:
  StreamError(std::size_t block_index, const std::string& what)
      : NumericError("block " + std::to_string(block_index) + ": " + what),
        block_index_(block_index) {}

  std::size_t block_index() const noexcept { return block_index_; }

 private:
  std::size_t block_index_;
};

class NoConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration. `line` is 0 when the key was not read from a file.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& what)
      : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, std::size_t line, const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += key + ": ";
    return out + what;
  }

  std::string key_;
  std::size_t line_;
};

}  // namespace anc
