#pragma once

#include <stdexcept>
#include <string>

namespace hdm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (files, parameters, shapes).
class DataError : public Error {
 public:
  using Error::Error;
};

// Text input that does not follow its declared format.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A problem instance exceeding the desk-scale limits of a dense algorithm.
class SizeError : public DataError {
 public:
  using DataError::DataError;
};

// Iterative or direct numerical method failed (singular system, no convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdm
