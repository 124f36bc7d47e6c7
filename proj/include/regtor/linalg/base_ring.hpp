#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace regtor::linalg {

/// Exact scalar. Integers and prime-field residues are stored with
/// denominator one; rationals use the full mpq representation.
using Scalar = mpq_class;

/// One of the three coefficient rings the engine works over: Z, Q or F_p.
///
/// All arithmetic goes through the ring so that results are normalized
/// (reduced mod p for prime fields). Over Q and F_p every nonzero element is a
/// unit and has Euclidean size 1; over Z the size is the absolute value.
class BaseRing {
 public:
  enum class Kind { kIntegers, kRationals, kPrimeField };

  static BaseRing integers() { return BaseRing(Kind::kIntegers, 0); }
  static BaseRing rationals() { return BaseRing(Kind::kRationals, 0); }
  /// Throws std::invalid_argument unless `p` is a prime below 2^31.
  static BaseRing prime_field(std::uint32_t p);

  Kind kind() const { return kind_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_field() const { return kind_ != Kind::kIntegers; }

  /// "Z", "Q" or "F<p>".
  std::string name() const;

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar from_int(long value) const { return normalize(Scalar(value)); }
  /// Brings a value into canonical form. Over Z a non-integral value throws.
  Scalar normalize(Scalar value) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;

  bool is_unit(const Scalar& a) const;
  /// Throws std::domain_error for non-units.
  Scalar inverse(const Scalar& a) const;
  /// True when b | a in the ring (always, for b != 0 over a field).
  bool divides(const Scalar& b, const Scalar& a) const;
  /// a / b; throws std::domain_error if b does not divide a.
  Scalar exact_quotient(const Scalar& a, const Scalar& b) const;

  /// Euclidean size used for pivot selection; zero has size 0.
  mpz_class size(const Scalar& a) const;
  /// Division with remainder: a = q*b + r with size(r) < size(b).
  /// Over Z the quotient is rounded toward negative infinity.
  Scalar euclid_quotient(const Scalar& a, const Scalar& b) const;
  /// Unit u such that u*a is the canonical associate (positive over Z, 1 over a field).
  Scalar normalizing_unit(const Scalar& a) const;

  std::string format(const Scalar& a) const;

  friend bool operator==(const BaseRing& a, const BaseRing& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const BaseRing& a, const BaseRing& b) { return !(a == b); }

 private:
  BaseRing(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t p);

}  // namespace regtor::linalg
