#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "regtor/linalg/base_ring.hpp"

namespace regtor::poly {

using linalg::BaseRing;
using linalg::Scalar;

/// Exponent vector x_1^{a_1} ... x_n^{a_n}. Comparison is lexicographic on
/// the exponents, so x_1 > x_2 > ... > 1 among monomials of equal degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {}

  static Monomial unit(std::size_t nvars) { return Monomial(std::vector<unsigned>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i);

  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t nvars() const { return exponents_.size(); }
  unsigned operator[](std::size_t i) const { return exponents_[i]; }
  bool is_unit() const;

  Monomial operator*(const Monomial& rhs) const;
  bool divides(const Monomial& other) const;
  /// other / this; precondition divides(other).
  Monomial cofactor_in(const Monomial& other) const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned> exponents_;
};

/// Sparse polynomial over a BaseRing in a fixed number of variables.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar, std::greater<>>;

  Polynomial() : ring_(BaseRing::integers()) {}
  Polynomial(BaseRing ring, std::size_t nvars) : ring_(ring), nvars_(nvars) {}

  static Polynomial constant(BaseRing ring, std::size_t nvars, const Scalar& c);
  static Polynomial term(BaseRing ring, const Monomial& m, const Scalar& c);
  static Polynomial variable(BaseRing ring, std::size_t nvars, std::size_t i);

  const BaseRing& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  /// Terms in decreasing lexicographic order of monomials.
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Scalar& c);

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial pow(unsigned e) const;

  /// Canonical text such as "x^2 - 3*x*y + 1"; "0" for the zero polynomial.
  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_ == b.ring_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  BaseRing ring_;
  std::size_t nvars_ = 0;
  Terms terms_;
};

}  // namespace regtor::poly
