#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "regtor/common/check_report.hpp"
#include "regtor/linalg/matrix.hpp"

namespace regtor::model {

using linalg::BaseRing;
using linalg::ExactMatrix;

/// Exponent vector of a monomial in f_1..f_n.
using Exponents = std::vector<unsigned>;

/// Monomials of Sym^s(W) on f_1..f_n, lexicographically decreasing.
std::vector<Exponents> sym_basis(std::size_t n, unsigned s);
/// k-subsets of {0..n-1} as bitmasks, lexicographic on sorted elements.
std::vector<std::uint32_t> wedge_basis(std::size_t n, unsigned k);

/// Rank of Sym^s(W) ⊗ Λ_k(V), i.e. C(n+s-1, n-1) * C(n, k).
std::size_t term_rank(std::size_t n, unsigned s, unsigned k);
/// Position of f^α ⊗ e_S in Sym^s ⊗ Λ_k: monomial-major, subset-minor.
std::size_t term_index(std::size_t n, const Exponents& alpha, std::uint32_t subset);

/// ∂^s : Sym^s ⊗ Λ_k -> Sym^{s+1} ⊗ Λ_{k-1},
/// f^α ⊗ e_S -> Σ_{i∈S} (-1)^{pos(i,S)} f^α f_i ⊗ e_{S∖i}. For k = 0 the
/// matrix has no rows.
ExactMatrix model_differential(std::size_t n, unsigned s, unsigned k, const BaseRing& base);

/// Extended coaction 1 ⊗ Δ on Sym^s ⊗ Λ_k. The target is the sum over
/// a = 0..k of Sym^s ⊗ Λ_a ⊗ Λ_{k-a}, in that block order, each block indexed
/// monomial-major, then left subset, then right subset.
ExactMatrix coaction(std::size_t n, unsigned s, unsigned k, const BaseRing& base);

/// ∂^s ⊗ 1 on the coaction target of Sym^s ⊗ Λ_k (zero on the a = 0 block).
ExactMatrix differential_on_left(std::size_t n, unsigned s, unsigned k, const BaseRing& base);

/// Exactness of 0 -> S -> Λ_* -> Sym^1 ⊗ Λ_{*-1} -> ... -> Sym^{s_max} ⊗ Λ_{*-s_max}
/// at every node before the last stage, plus torsion-free cokernels of the
/// maps over the integers.
CheckReport verify_model_exactness(std::size_t n, unsigned s_max, const BaseRing& base);

/// (1⊗Δ)∘∂^s = (∂^s⊗1)∘(1⊗Δ) for s <= s_max, colinearity of S -> Λ for the
/// trivial coaction, and the counit and coassociativity laws of Δ.
CheckReport verify_colinearity(std::size_t n, unsigned s_max, const BaseRing& base);

}  // namespace regtor::model
