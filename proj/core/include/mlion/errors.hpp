#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlion {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A documented precondition on the shape of the data does not hold
// (e.g. symmetric normalization of an asymmetric matrix).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Statistic is mathematically undefined for the given input (zero strength,
// constant vector, empty overlap support, ...).
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlion
