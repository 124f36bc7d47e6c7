#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "regtor/common/check_report.hpp"
#include "regtor/exterior/index_set.hpp"
#include "regtor/linalg/homology.hpp"
#include "regtor/modules/sequences.hpp"

namespace regtor::tor {

using exterior::IndexSet;
using linalg::ExactMatrix;
using linalg::ModuleInvariants;
using linalg::PivotOrder;
using linalg::Scalar;
using linalg::Vector;
using modules::GradedModule;
using modules::ModuleMorphism;

/// Global sign applied to the raw snake-lemma map, fixed so that the
/// connecting map of 0 -> I/I^2 -> R/I^2 -> R/I -> 0 sends e_j to -{r_j}.
inline constexpr int kConnectingSign = -1;

/// Summand e_S ⊗ M_{module_degree} of a cell of Λ ⊗ M.
struct KoszulBlock {
  IndexSet subset;
  unsigned module_degree = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
};

/// The Koszul complex Λ_*(e_1..e_n) ⊗_R M, cell by cell.
///
/// Cell (k, d) is the sum over k-subsets S, in lexicographic order, of
/// e_S ⊗ M_{d - deg S}, where deg S adds up the degrees of the r_j; d is the
/// total internal degree and is preserved by the differential
/// e_S ⊗ m -> Σ_{j∈S} (-1)^{pos(j,S)} e_{S∖j} ⊗ r_j m.
class KoszulTensorComplex {
 public:
  explicit KoszulTensorComplex(std::shared_ptr<const GradedModule> module, unsigned threads = 1);

  const GradedModule& module() const { return *module_; }
  const std::shared_ptr<const GradedModule>& module_ptr() const { return module_; }
  std::size_t n() const { return n_; }
  unsigned degree_bound() const { return module_->degree_bound(); }

  const std::vector<KoszulBlock>& blocks(unsigned k, unsigned d) const { return cell(k, d).blocks; }
  std::size_t dimension(unsigned k, unsigned d) const { return cell(k, d).dimension; }
  /// The block for `subset` in cell (|subset|, d), if M_{d - deg subset} exists.
  const KoszulBlock* find_block(unsigned d, IndexSet subset) const;
  /// Matrix of the differential from cell (k, d) to cell (k-1, d); for k = 0
  /// it has no rows.
  const ExactMatrix& differential(unsigned k, unsigned d) const { return cell(k, d).differential; }
  /// Block-diagonal relations of the module pieces in cell (k, d).
  const ExactMatrix& relations(unsigned k, unsigned d) const { return cell(k, d).relations; }

  /// Matrix of 1 ⊗ f from cell (k, d) of this complex to cell (k, d) of
  /// `target`, where f goes from module() to target.module().
  ExactMatrix chain_map(const ModuleMorphism& f, const KoszulTensorComplex& target, unsigned k, unsigned d) const;

 private:
  struct Cell {
    std::vector<KoszulBlock> blocks;
    std::size_t dimension = 0;
    ExactMatrix differential;
    ExactMatrix relations;
  };
  const Cell& cell(unsigned k, unsigned d) const { return cells_.at(k).at(d); }

  std::shared_ptr<const GradedModule> module_;
  std::size_t n_;
  std::vector<std::vector<Cell>> cells_;  // [k][d]
};

/// Tor_k^R(R/I, M)_d = H_k(Λ ⊗ M)_d for 0 <= k <= n and d up to the bound.
class TorModule {
 public:
  explicit TorModule(std::shared_ptr<const KoszulTensorComplex> complex, unsigned threads = 1);

  const KoszulTensorComplex& complex() const { return *complex_; }
  const std::shared_ptr<const KoszulTensorComplex>& complex_ptr() const { return complex_; }
  std::size_t n() const { return complex_->n(); }
  unsigned degree_bound() const { return complex_->degree_bound(); }

  const linalg::Subquotient& group(unsigned k, unsigned d) const { return groups_.at(k).at(d); }
  const ModuleInvariants& invariants(unsigned k, unsigned d) const { return group(k, d).invariants(); }
  std::size_t generator_count(unsigned k, unsigned d) const { return group(k, d).generator_count(); }
  /// Chain representative Σ c_i z_i of the class with coordinates c.
  Vector representative(unsigned k, unsigned d, const Vector& coordinates) const;
  /// Coordinates of the class of a cycle; throws std::invalid_argument otherwise.
  Vector class_of(unsigned k, unsigned d, const Vector& cycle) const { return group(k, d).class_of(cycle); }
  /// Presentation of the group on its chosen generators.
  ExactMatrix relations(unsigned k, unsigned d) const { return group(k, d).relations(); }
  /// Whether every stored (k, d) group is torsion free.
  bool is_free() const;

 private:
  std::shared_ptr<const KoszulTensorComplex> complex_;
  std::vector<std::vector<linalg::Subquotient>> groups_;  // [k][d]
};

/// Matrices on Tor generators, indexed by the source cell (k, d).
struct TorMap {
  std::vector<std::vector<ExactMatrix>> cells;  // [k][d]
  const ExactMatrix& at(unsigned k, unsigned d) const { return cells.at(k).at(d); }
};

/// (1 ⊗ f)_* on homology.
TorMap induced_map(const ModuleMorphism& f, const TorModule& source, const TorModule& target, unsigned threads = 1);

/// Connecting map Tor_k(C)_d -> Tor_{k-1}(A)_d of 0 -> A -> B -> C -> 0 by
/// the snake lemma, scaled by kConnectingSign. `order` selects the pivot
/// order used for both the lift through the projection and the pullback
/// through the inclusion. The k = 0 cells have no rows. Throws
/// std::logic_error if a lift or pullback fails.
TorMap connecting_hom(const modules::ShortExactSequence& ses, const KoszulTensorComplex& middle,
                      const TorModule& left, const TorModule& right, PivotOrder order = PivotOrder::kNatural,
                      unsigned threads = 1);

/// Product of chains (e_S ⊗ a)(e_T ⊗ b) = e_S ∧ e_T ⊗ μ(a, b) from cells
/// (k1, d1) and (k2, d2) into cell (k1 + k2, d1 + d2) of `target`.
Vector chain_product(const modules::BilinearMap& mu, const KoszulTensorComplex& first,
                     const KoszulTensorComplex& second, const KoszulTensorComplex& target, unsigned k1, unsigned d1,
                     const Vector& x, unsigned k2, unsigned d2, const Vector& y);

struct TorClass {
  unsigned k = 0;
  unsigned d = 0;
  Vector coordinates;
};

/// Class of the chain product of representatives.
TorClass tor_product(const modules::BilinearMap& mu, const TorModule& first, const TorModule& second,
                     const TorModule& target, const TorClass& a, const TorClass& b);

/// Homology of f then g at the middle of presented modules vanishes.
bool exact_at(const ExactMatrix& f, const ExactMatrix& g, const ExactMatrix& rel_mid, const ExactMatrix& rel_out);

/// Exactness of ... -> Tor_k(A) -> Tor_k(B) -> Tor_k(C) -> Tor_{k-1}(A) -> ...
/// at every node, degreewise.
CheckReport check_long_exact_sequence(const TorModule& left, const TorModule& middle, const TorModule& right,
                                      const TorMap& inclusion, const TorMap& projection, const TorMap& connecting);

/// Leibniz rule ∂(α·β) = ∂(α)·β + (-1)^p α·∂(β) for the singular extension
/// 0 -> J -> B -> A' -> 0 on all pairs of basis classes with p + q <= n and
/// d + e <= bound. Needs the quotient product and both J-actions.
CheckReport verify_leibniz(const modules::ShortExactSequence& ses, const TorModule& kernel,
                           const TorModule& quotient, const TorMap& connecting, unsigned bound, unsigned threads = 1);

}  // namespace regtor::tor
