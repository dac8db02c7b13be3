// SPDX-FileCopyrightText: Copyright (c) 2026 The rescap Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rescap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input row. `line()` is 1-based; 0 means "no particular line".
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input is well-formed but unusable (empty graph, no labelled nodes, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Fewer than two attribute groups where a disparity needs at least two.
class TooFewGroupsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Caller broke an operation's precondition (self-loop, duplicate edge, bad index).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The Laplacian has a nontrivial kernel beyond the all-ones vector.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rescap
