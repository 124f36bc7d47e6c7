#include "regtor/poly/polynomial.hpp"

#include <stdexcept>

namespace regtor::poly {

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  std::vector<unsigned> e(nvars, 0);
  e.at(i) = 1;
  return Monomial(std::move(e));
}

bool Monomial::is_unit() const {
  for (unsigned e : exponents_) {
    if (e != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  if (rhs.nvars() != nvars()) throw std::invalid_argument("monomial product: variable count mismatch");
  std::vector<unsigned> e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += rhs.exponents_[i];
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_.at(i)) return false;
  }
  return true;
}

Monomial Monomial::cofactor_in(const Monomial& other) const {
  std::vector<unsigned> e = other.exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= exponents_[i];
  return Monomial(std::move(e));
}

Polynomial Polynomial::constant(BaseRing ring, std::size_t nvars, const Scalar& c) {
  Polynomial p(ring, nvars);
  p.add_term(Monomial::unit(nvars), c);
  return p;
}

Polynomial Polynomial::term(BaseRing ring, const Monomial& m, const Scalar& c) {
  Polynomial p(ring, m.nvars());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::variable(BaseRing ring, std::size_t nvars, std::size_t i) {
  return term(ring, Monomial::variable(nvars, i), 1);
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (m.nvars() != nvars_) throw std::invalid_argument("add_term: variable count mismatch");
  Scalar value = ring_.normalize(c);
  if (sgn(value) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, value);
  if (inserted) return;
  it->second = ring_.add(it->second, value);
  if (sgn(it->second) == 0) terms_.erase(it);
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  Polynomial out = *this;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  Polynomial out(ring_, nvars_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : rhs.terms_) out.add_term(m1 * m2, ring_.mul(c1, c2));
  }
  return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial out(ring_, nvars_);
  for (const auto& [m, x] : terms_) out.add_term(m, ring_.mul(x, c));
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial out = constant(ring_, nvars_, 1);
  for (unsigned i = 0; i < e; ++i) out = out * *this;
  return out;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar magnitude = abs(c);
    out += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names.at(i);
      if (m[i] > 1) factors += "^" + std::to_string(m[i]);
    }
    if (factors.empty()) {
      out += magnitude.get_str();
    } else if (magnitude == 1) {
      out += factors;
    } else {
      out += magnitude.get_str() + "*" + factors;
    }
  }
  return out;
}

}  // namespace regtor::poly
