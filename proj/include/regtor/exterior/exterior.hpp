#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "regtor/common/check_report.hpp"
#include "regtor/exterior/index_set.hpp"
#include "regtor/poly/ring_context.hpp"

namespace regtor::exterior {

using poly::Polynomial;
using poly::RingContext;

/// Element of the exterior algebra on e_1..e_n with coefficients in R:
/// a finite sum of c_S * e_S.
class ExteriorElement {
 public:
  using Terms = std::map<IndexSet, Polynomial>;

  explicit ExteriorElement(const RingContext& ctx) : base_(ctx.base()), nvars_(ctx.n()) {}
  ExteriorElement(linalg::BaseRing base, std::size_t nvars) : base_(base), nvars_(nvars) {}

  static ExteriorElement basis(const RingContext& ctx, IndexSet s);
  static ExteriorElement scalar(const RingContext& ctx, const Polynomial& c);

  const linalg::BaseRing& base() const { return base_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Common |S| of all terms; nullopt for zero or mixed elements.
  std::optional<std::size_t> homological_degree() const;

  void add_term(IndexSet s, const Polynomial& c);
  ExteriorElement operator+(const ExteriorElement& rhs) const;
  ExteriorElement operator-(const ExteriorElement& rhs) const;
  /// Multiplies every coefficient by c.
  ExteriorElement scaled(const Polynomial& c) const;
  ExteriorElement scaled(const linalg::Scalar& c) const;

  std::string to_string(const RingContext& ctx) const;

  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) { return a.terms_ == b.terms_; }

 private:
  linalg::BaseRing base_;
  std::size_t nvars_;
  Terms terms_;
};

/// Element of Λ ⊗_R Λ: sums of c * (e_L ⊗ e_R).
class TensorElement {
 public:
  using Key = std::pair<IndexSet, IndexSet>;
  using Terms = std::map<Key, Polynomial>;

  explicit TensorElement(const RingContext& ctx) : base_(ctx.base()), nvars_(ctx.n()) {}
  TensorElement(linalg::BaseRing base, std::size_t nvars) : base_(base), nvars_(nvars) {}

  static TensorElement basis(const RingContext& ctx, IndexSet left, IndexSet right);

  const linalg::BaseRing& base() const { return base_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(IndexSet left, IndexSet right, const Polynomial& c);
  TensorElement operator+(const TensorElement& rhs) const;
  TensorElement operator-(const TensorElement& rhs) const;
  TensorElement scaled(const linalg::Scalar& c) const;

  std::string to_string(const RingContext& ctx) const;

  friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms_ == b.terms_; }

 private:
  linalg::BaseRing base_;
  std::size_t nvars_;
  Terms terms_;
};

/// e_S ∧ e_T = merge_sign(S, T) e_{S ∪ T}, extended bilinearly.
ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b);

/// The derivation with e_j ↦ r_j:
/// d(c e_S) = Σ_{j ∈ S} (-1)^{position(j, S)} c r_j e_{S∖j}.
ExteriorElement koszul_diff(const RingContext& ctx, const ExteriorElement& a);

/// Algebra map with Δ(e_j) = 1 ⊗ e_j + e_j ⊗ 1; on e_S the signed sum over
/// splittings S = L ⊔ R.
TensorElement coproduct(const ExteriorElement& a);

/// τ(e_L ⊗ e_R) = (-1)^{|L||R|} e_R ⊗ e_L.
TensorElement twist(const TensorElement& t);

/// d ⊗ 1.
TensorElement diff_left(const RingContext& ctx, const TensorElement& t);

/// d(e ⊗ f) = d(e) ⊗ f + (-1)^{|e|} e ⊗ d(f).
TensorElement tensor_diff(const RingContext& ctx, const TensorElement& t);

/// Product in the graded tensor algebra:
/// (a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} (a ∧ c) ⊗ (b ∧ d).
TensorElement tensor_product(const TensorElement& x, const TensorElement& y);

/// Left counit ε ⊗ 1 (keeps terms with empty left factor) and right counit.
ExteriorElement counit_left(const TensorElement& t);
ExteriorElement counit_right(const TensorElement& t);

/// Checks d∘d = 0, the derivation formula, Δ∘d = (d⊗1)∘Δ,
/// d^⊗∘Δ = 2(Δ∘d) and Δ = τ∘Δ on every basis element (every basis pair for
/// the derivation formula) and on `trials` seeded random elements.
CheckReport verify_bialgebra_identities(const RingContext& ctx, std::size_t trials, std::uint64_t seed);

}  // namespace regtor::exterior
