#include "regtor/linalg/base_ring.hpp"

#include <stdexcept>

namespace regtor::linalg {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

BaseRing BaseRing::prime_field(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not a prime below 2^31");
  }
  return BaseRing(Kind::kPrimeField, p);
}

std::string BaseRing::name() const {
  switch (kind_) {
    case Kind::kIntegers:
      return "Z";
    case Kind::kRationals:
      return "Q";
    case Kind::kPrimeField:
      return "F" + std::to_string(modulus_);
  }
  return "?";
}

Scalar BaseRing::normalize(Scalar value) const {
  switch (kind_) {
    case Kind::kRationals:
      return value;
    case Kind::kIntegers:
      if (value.get_den() != 1) throw std::domain_error("non-integral value over Z");
      return value;
    case Kind::kPrimeField: {
      mpz_class p = modulus_;
      mpz_class num = value.get_num();
      mpz_class den = value.get_den();
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
      if (den != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
          throw std::domain_error("denominator divisible by the characteristic");
        }
        r = r * inv;
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
      }
      return Scalar(r);
    }
  }
  return value;
}

Scalar BaseRing::add(const Scalar& a, const Scalar& b) const {
  Scalar r = a + b;
  if (kind_ == Kind::kPrimeField && r >= modulus_) r -= modulus_;
  return r;
}

Scalar BaseRing::sub(const Scalar& a, const Scalar& b) const {
  Scalar r = a - b;
  if (kind_ == Kind::kPrimeField && r < 0) r += modulus_;
  return r;
}

Scalar BaseRing::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::kPrimeField) return normalize(a * b);
  return a * b;
}

Scalar BaseRing::neg(const Scalar& a) const {
  if (kind_ == Kind::kPrimeField) return sgn(a) == 0 ? a : Scalar(modulus_) - a;
  return -a;
}

bool BaseRing::is_unit(const Scalar& a) const {
  if (sgn(a) == 0) return false;
  if (kind_ == Kind::kIntegers) return abs(a) == 1;
  return true;
}

Scalar BaseRing::inverse(const Scalar& a) const {
  if (!is_unit(a)) throw std::domain_error("inverse of a non-unit");
  switch (kind_) {
    case Kind::kIntegers:
      return a;
    case Kind::kRationals:
      return 1 / a;
    case Kind::kPrimeField: {
      mpz_class inv;
      mpz_class p = modulus_;
      mpz_class num = a.get_num();
      mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
      return Scalar(inv);
    }
  }
  return a;
}

bool BaseRing::divides(const Scalar& b, const Scalar& a) const {
  if (sgn(b) == 0) return sgn(a) == 0;
  if (is_field()) return true;
  return mpz_divisible_p(a.get_num_mpz_t(), b.get_num_mpz_t()) != 0;
}

Scalar BaseRing::exact_quotient(const Scalar& a, const Scalar& b) const {
  if (!divides(b, a)) throw std::domain_error("inexact division");
  if (sgn(b) == 0) return zero();
  if (kind_ == Kind::kIntegers) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    return Scalar(q);
  }
  return mul(a, inverse(b));
}

mpz_class BaseRing::size(const Scalar& a) const {
  if (sgn(a) == 0) return 0;
  if (is_field()) return 1;
  return abs(a.get_num());
}

Scalar BaseRing::euclid_quotient(const Scalar& a, const Scalar& b) const {
  if (sgn(b) == 0) throw std::domain_error("division by zero");
  if (is_field()) return mul(a, inverse(b));
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  return Scalar(q);
}

Scalar BaseRing::normalizing_unit(const Scalar& a) const {
  if (sgn(a) == 0) return one();
  if (is_field()) return inverse(a);
  return sgn(a) < 0 ? Scalar(-1) : Scalar(1);
}

std::string BaseRing::format(const Scalar& a) const { return a.get_str(); }

}  // namespace regtor::linalg
