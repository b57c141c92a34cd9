#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cantor {

// Error classes map one-to-one onto CLI exit codes (see tools/cantor.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (DSL, CNF, serialized values).
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column, std::string expected)
      : Error(message + " at " + std::to_string(line) + ":" + std::to_string(column) +
              (expected.empty() ? std::string() : ", expected " + expected)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

// A structural precondition failed (missing rank, non-surjective index map, bad generator).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A checkable certificate was violated: rapid-Cauchy bound, stage budget, rate witness.
class CertificateError : public Error {
 public:
  using Error::Error;
};

// A statistical acceptance gate did not pass.
class StatisticalGateError : public Error {
 public:
  using Error::Error;
};

}  // namespace cantor
