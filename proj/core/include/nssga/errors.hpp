#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nssga {

/// Argument outside the mathematical domain of a curve function (e.g. lambda <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or invalid configuration: bounds, GA settings, rolling plans.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bad input data (matured bonds, empty series, unreadable files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV content. Line and column are 1-based; column 0 means "whole line".
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised by the GA when the fitness function throws or returns a non-finite value.
class FitnessError : public std::runtime_error {
 public:
  FitnessError(std::vector<double> gene, const std::string& what);

  const std::vector<double>& gene() const noexcept { return gene_; }

 private:
  std::vector<double> gene_;
};

}  // namespace nssga
