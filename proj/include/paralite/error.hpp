#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace paralite {

// Base of every error the library raises. Callers that only care about
// "something went wrong" catch this; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected)
      : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
              ": expected " + expected),
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

class CardinalityError : public Error {
 public:
  CardinalityError(std::size_t line, std::size_t column)
      : Error("cardinality must be positive at " + std::to_string(line) + ":" +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A symbol is used in two incompatible positions (role vs concept, etc).
class ArityError : public Error {
 public:
  explicit ArityError(const std::string& what) : Error(what) {}
  ArityError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)), line_(line), column_(column) {}

  // 0 when the clash was found outside the parser.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class UnknownIndividual : public Error {
 public:
  using Error::Error;
};

class UniverseTooLarge : public Error {
 public:
  UniverseTooLarge(std::string what, double count)
      : Error(std::move(what)), count_(count) {}
  // Number of types the universe would have had (may exceed 2^64, hence double).
  double count() const { return count_; }

 private:
  double count_;
};

class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyPool : public Error {
 public:
  EmptyPool() : Error("minimal types requested over an empty pool") {}
};

class RepairImpossible : public Error {
 public:
  using Error::Error;
};

class FeatureSpaceTooLarge : public Error {
 public:
  FeatureSpaceTooLarge(std::string what, double count)
      : Error(std::move(what)), count_(count) {}
  double count() const { return count_; }

 private:
  double count_;
};

}  // namespace paralite
