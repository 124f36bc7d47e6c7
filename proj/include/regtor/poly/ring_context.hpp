#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "regtor/common/check_report.hpp"
#include "regtor/linalg/matrix.hpp"
#include "regtor/poly/polynomial.hpp"

namespace regtor::poly {

using linalg::ExactMatrix;
using linalg::Vector;

/// R = S[x_1..x_n] with positive weights, together with a homogeneous
/// sequence r_1..r_n generating the ideal I.
///
/// Graded pieces R_d are free S-modules on the monomials of weighted degree
/// d, listed by decreasing lexicographic exponent order. Piece bases are
/// computed on demand and cached; the cache is safe to use from several
/// threads.
class RingContext {
 public:
  /// Throws std::invalid_argument if n = 0, the names/weights/sequence
  /// lengths disagree with n, a weight is zero, or some r_j is zero or not
  /// homogeneous.
  RingContext(BaseRing base, std::vector<std::string> names, std::vector<unsigned> weights,
              std::vector<Polynomial> sequence);

  const BaseRing& base() const { return base_; }
  std::size_t n() const { return names_.size(); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<unsigned>& weights() const { return weights_; }
  const std::vector<Polynomial>& sequence() const { return sequence_; }
  unsigned seq_degree(std::size_t j) const { return seq_degrees_.at(j); }
  const std::vector<unsigned>& seq_degrees() const { return seq_degrees_; }
  unsigned max_seq_degree() const;

  unsigned degree(const Monomial& m) const;
  /// Degree of a nonzero homogeneous polynomial; nullopt otherwise.
  std::optional<unsigned> homogeneous_degree(const Polynomial& p) const;

  Polynomial zero() const { return Polynomial(base_, n()); }
  Polynomial one() const { return Polynomial::constant(base_, n(), 1); }
  Polynomial variable(std::size_t i) const { return Polynomial::variable(base_, n(), i); }

  const std::vector<Monomial>& piece_basis(unsigned d) const;
  std::size_t piece_rank(unsigned d) const { return piece_basis(d).size(); }
  /// Position of m in piece_basis(degree(m)).
  std::size_t index_of(const Monomial& m) const;

  /// Coordinates of p in R_d; every term of p must have degree d.
  Vector coordinates(const Polynomial& p, unsigned d) const;
  Polynomial from_coordinates(const Vector& v, unsigned d) const;

  std::string render(const Polynomial& p) const { return p.to_string(names_); }

 private:
  struct Piece {
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
  };
  const Piece& piece(unsigned d) const;

  BaseRing base_;
  std::vector<std::string> names_;
  std::vector<unsigned> weights_;
  std::vector<Polynomial> sequence_;
  std::vector<unsigned> seq_degrees_;

  mutable std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
  mutable std::map<unsigned, Piece> cache_;
};

/// All monomials of weighted degree d, lexicographically decreasing.
std::vector<Monomial> graded_piece_basis(const RingContext& ctx, unsigned d);

/// Matrix of multiplication by the homogeneous polynomial f from R_d to
/// R_{d + deg f}. Throws std::invalid_argument if f is zero or not homogeneous.
ExactMatrix mult_matrix(const RingContext& ctx, const Polynomial& f, unsigned d);

/// Degreewise regularity: r_j is a nonzerodivisor on (R/(r_1..r_{j-1}))_d
/// for all d <= degree_bound - deg r_j, and I_0 != R_0. The witness of a
/// failure names j (1-based), the degree and a kernel element.
CheckReport check_regular_sequence(const RingContext& ctx, unsigned degree_bound);

}  // namespace regtor::poly
