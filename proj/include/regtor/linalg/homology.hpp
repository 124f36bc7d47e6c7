#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "regtor/linalg/matrix.hpp"
#include "regtor/linalg/normal_form.hpp"

namespace regtor::linalg {

/// Isomorphism type of a finitely generated module: free rank plus torsion
/// invariant factors d_1 | d_2 | ... (each >= 2, always empty over a field).
struct ModuleInvariants {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  std::string to_string() const;

  friend bool operator==(const ModuleInvariants& a, const ModuleInvariants& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

/// Invariants of coker(m) where the rows of m index the generators.
ModuleInvariants cokernel_invariants(const ExactMatrix& m);

/// A subquotient Z / B of a free module, with Z given by a lattice basis and B
/// by generators lying inside Z.
///
/// The chosen generators of Z / B are ordered torsion first (by increasing
/// order) and then free. Coordinates of torsion generators are reduced into
/// [0, d_i), which makes `class_of` canonical.
class Subquotient {
 public:
  Subquotient() = default;
  /// Throws std::logic_error if some column of `boundaries` is not in the
  /// span of `cycle_lattice`.
  Subquotient(const ExactMatrix& cycle_lattice, const ExactMatrix& boundaries);

  const ModuleInvariants& invariants() const { return invariants_; }
  std::size_t generator_count() const { return generators_.cols(); }
  /// Columns are cycle representatives of the chosen generators.
  const ExactMatrix& cycle_basis() const { return generators_; }
  /// Order of generator i: d_i for torsion generators, 0 for free ones.
  const std::vector<mpz_class>& orders() const { return orders_; }
  std::size_t ambient_dimension() const { return ambient_; }

  /// Coordinates of the class of x, or nullopt if x is not a cycle.
  std::optional<Vector> try_class_of(const Vector& x) const;
  /// Throws std::invalid_argument when x is not a cycle.
  Vector class_of(const Vector& x) const;
  /// Reduces torsion coordinates modulo their orders.
  Vector reduce(Vector coords) const;
  /// Presentation of Z / B on the chosen generators: one relation column
  /// d_i * g_i per torsion generator.
  ExactMatrix relations() const;

 private:
  BaseRing ring_ = BaseRing::integers();
  std::size_t ambient_ = 0;
  std::size_t first_kept_ = 0;
  ModuleInvariants invariants_;
  ExactMatrix generators_;
  std::vector<mpz_class> orders_;
  ExactMatrix to_new_basis_;  // U from the Smith form of B in Z-coordinates
  std::optional<ImageSolver> lattice_solver_;
};

/// H = ker(d_out) / im(d_in) for free modules. Throws std::logic_error when
/// d_out * d_in != 0.
Subquotient subquotient_homology(const ExactMatrix& d_in, const ExactMatrix& d_out);

/// Homology at the middle of A -> B -> C where each module is presented
/// (generators modulo the column span of rel_*) and the maps act on
/// generators. Cycles are x with d_out x in im(rel_out); boundaries are
/// im(d_in) + im(rel_mid).
Subquotient presented_homology(const ExactMatrix& d_in, const ExactMatrix& d_out,
                               const ExactMatrix& rel_mid, const ExactMatrix& rel_out);

/// Whether the map of presented modules induced by f is injective.
bool presented_injective(const ExactMatrix& f, const ExactMatrix& rel_source,
                         const ExactMatrix& rel_target);

/// Whether the map of presented modules induced by f is surjective.
bool presented_surjective(const ExactMatrix& f, const ExactMatrix& rel_target);

/// First x (in generator coordinates) with f x = 0 in the target but x != 0
/// in the source, if any.
std::optional<Vector> presented_kernel_witness(const ExactMatrix& f, const ExactMatrix& rel_source,
                                               const ExactMatrix& rel_target);

/// Whether the columns of m generate the whole ambient lattice.
bool spans_everything(const ExactMatrix& m);

}  // namespace regtor::linalg
