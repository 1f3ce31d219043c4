#include "nssga/errors.hpp"

#include <utility>

namespace nssga {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : InputError("line " + std::to_string(line) +
                 (column > 0 ? ", column " + std::to_string(column) : std::string{}) + ": " +
                 what),
      line_(line),
      column_(column) {}

FitnessError::FitnessError(std::vector<double> gene, const std::string& what)
    : std::runtime_error(what), gene_(std::move(gene)) {}

}  // namespace nssga
