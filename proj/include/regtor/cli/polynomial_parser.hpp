#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "regtor/poly/polynomial.hpp"

namespace regtor::cli {

/// Syntax error at a 1-based column of the parsed text.
class PolynomialSyntaxError : public std::runtime_error {
 public:
  PolynomialSyntaxError(std::size_t column, const std::string& message)
      : std::runtime_error(message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Parses integer coefficients, the given variable names, + - * ^ and
/// parentheses, e.g. "x^2 - 3*x*(y + 1)". Exponents are at most 1000.
poly::Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables,
                                  const linalg::BaseRing& ring);

}  // namespace regtor::cli
