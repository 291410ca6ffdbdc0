#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffsample {

// Base class for library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (edge lists, cascade files, configs).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0)
      : Error(line ? message + " (line " + std::to_string(line) + ")" : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Edge placement could not finish within the rejection-draw budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Diffusion stopped below the requested edge coverage.
class CoverageError : public Error {
 public:
  CoverageError(const std::string& message, double achieved)
      : Error(message), achieved_(achieved) {}

  // Coverage fraction actually reached before giving up.
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

// Average of an empty element set.
class UndefinedAverageError : public Error {
 public:
  using Error::Error;
};

}  // namespace diffsample
