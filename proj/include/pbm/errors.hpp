#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "pbm/rational.hpp"

namespace pbm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax-level failures.
struct ParseError : Error {
  ParseError(std::string msg, int line, int col, std::string expected = "")
      : Error(std::move(msg)), line(line), col(col), expected(std::move(expected)) {}
  int line;
  int col;
  std::string expected;
};

struct WeightSumError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

// Formula/parameter domain violations (bounds, witnesses, brp).
struct DomainError : Error {
  using Error::Error;
};

struct ArityError : Error {
  using Error::Error;
};

struct ParamError : Error {
  using Error::Error;
};

struct NoSolutionError : Error {
  using Error::Error;
};

// Interval attached to a budget failure when a partial answer exists.
struct PartialInterval {
  Rat lower;
  Rat upper;
  unsigned depthUsed = 0;
};

struct BudgetExceededError : Error {
  explicit BudgetExceededError(std::string msg, std::optional<PartialInterval> partial = {})
      : Error(std::move(msg)), partial(std::move(partial)) {}
  std::optional<PartialInterval> partial;
};

}  // namespace pbm
