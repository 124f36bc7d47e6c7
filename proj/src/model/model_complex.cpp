#include "regtor/model/model_complex.hpp"

#include <bit>
#include <map>
#include <stdexcept>
#include <tuple>

#include "regtor/linalg/homology.hpp"

namespace regtor::model {

namespace {

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int sign_of(bool odd) { return odd ? -1 : 1; }

unsigned below(std::uint32_t set, std::size_t i) {
  return static_cast<unsigned>(std::popcount(set & ((std::uint32_t{1} << i) - 1)));
}

// Sign of e_left ∧ e_right = ± e_{left ∪ right} for disjoint sets.
int shuffle_sign(std::uint32_t left, std::uint32_t right) {
  unsigned inversions = 0;
  for (std::size_t i = 0; i < 32; ++i) {
    if (right >> i & 1u) inversions += static_cast<unsigned>(std::popcount(left >> (i + 1)));
  }
  return sign_of(inversions % 2);
}

std::vector<std::uint32_t> submasks(std::uint32_t set) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t sub = set;; sub = (sub - 1) & set) {
    out.push_back(sub);
    if (sub == 0) break;
  }
  return out;
}

std::size_t subset_index(std::size_t n, std::uint32_t subset) {
  const auto all = wedge_basis(n, static_cast<unsigned>(std::popcount(subset)));
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == subset) return i;
  }
  throw std::out_of_range("subset outside {0..n-1}");
}

std::size_t monomial_index(std::size_t n, const Exponents& alpha) {
  unsigned s = 0;
  for (unsigned a : alpha) s += a;
  const auto all = sym_basis(n, s);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == alpha) return i;
  }
  throw std::out_of_range("monomial has wrong length");
}

// Offsets of the a-blocks of the coaction target of Sym^s ⊗ Λ_k.
std::vector<std::size_t> coaction_offsets(std::size_t n, unsigned s, unsigned k) {
  std::vector<std::size_t> off{0};
  const std::size_t monos = choose(n + s - 1, n - 1);
  for (unsigned a = 0; a <= k; ++a) off.push_back(off.back() + monos * choose(n, a) * choose(n, k - a));
  return off;
}

std::size_t coaction_row(std::size_t n, unsigned s, unsigned k, std::size_t mono, std::uint32_t left,
                         std::uint32_t right) {
  const unsigned a = static_cast<unsigned>(std::popcount(left));
  const std::size_t right_count = choose(n, k - a);
  return coaction_offsets(n, s, k)[a] + (mono * choose(n, a) + subset_index(n, left)) * right_count +
         subset_index(n, right);
}

}  // namespace

std::vector<Exponents> sym_basis(std::size_t n, unsigned s) {
  if (n == 0) return s == 0 ? std::vector<Exponents>{Exponents{}} : std::vector<Exponents>{};
  if (n == 1) return {{s}};
  std::vector<Exponents> out;
  for (unsigned a = s + 1; a-- > 0;) {
    for (auto rest : sym_basis(n - 1, s - a)) {
      rest.insert(rest.begin(), a);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

std::vector<std::uint32_t> wedge_basis(std::size_t n, unsigned k) {
  std::vector<std::uint32_t> out;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  if (k > n) return out;
  while (true) {
    std::uint32_t mask = 0;
    for (std::size_t i : pick) mask |= std::uint32_t{1} << i;
    out.push_back(mask);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::size_t term_rank(std::size_t n, unsigned s, unsigned k) { return choose(n + s - 1, n - 1) * choose(n, k); }

std::size_t term_index(std::size_t n, const Exponents& alpha, std::uint32_t subset) {
  const auto k = static_cast<std::size_t>(std::popcount(subset));
  return monomial_index(n, alpha) * choose(n, k) + subset_index(n, subset);
}

ExactMatrix model_differential(std::size_t n, unsigned s, unsigned k, const BaseRing& base) {
  if (k == 0) return ExactMatrix(base, 0, term_rank(n, s, 0));
  ExactMatrix m(base, term_rank(n, s + 1, k - 1), term_rank(n, s, k));
  for (const auto& alpha : sym_basis(n, s)) {
    for (std::uint32_t subset : wedge_basis(n, k)) {
      const std::size_t col = term_index(n, alpha, subset);
      for (std::size_t i = 0; i < n; ++i) {
        if (!(subset >> i & 1u)) continue;
        Exponents grown = alpha;
        ++grown[i];
        m.set(term_index(n, grown, subset & ~(std::uint32_t{1} << i)), col, base.from_int(sign_of(below(subset, i) % 2)));
      }
    }
  }
  return m;
}

ExactMatrix coaction(std::size_t n, unsigned s, unsigned k, const BaseRing& base) {
  ExactMatrix m(base, coaction_offsets(n, s, k).back(), term_rank(n, s, k));
  const auto monos = sym_basis(n, s);
  for (std::size_t mi = 0; mi < monos.size(); ++mi) {
    for (std::uint32_t subset : wedge_basis(n, k)) {
      const std::size_t col = term_index(n, monos[mi], subset);
      for (std::uint32_t left : submasks(subset)) {
        const std::uint32_t right = subset & ~left;
        m.set(coaction_row(n, s, k, mi, left, right), col, base.from_int(shuffle_sign(left, right)));
      }
    }
  }
  return m;
}

ExactMatrix differential_on_left(std::size_t n, unsigned s, unsigned k, const BaseRing& base) {
  if (k == 0) return ExactMatrix(base, 0, coaction_offsets(n, s, 0).back());
  ExactMatrix m(base, coaction_offsets(n, s + 1, k - 1).back(), coaction_offsets(n, s, k).back());
  const auto monos = sym_basis(n, s);
  for (std::size_t mi = 0; mi < monos.size(); ++mi) {
    for (unsigned a = 1; a <= k; ++a) {
      for (std::uint32_t left : wedge_basis(n, a)) {
        for (std::uint32_t right : wedge_basis(n, k - a)) {
          const std::size_t col = coaction_row(n, s, k, mi, left, right);
          for (std::size_t i = 0; i < n; ++i) {
            if (!(left >> i & 1u)) continue;
            Exponents grown = monos[mi];
            ++grown[i];
            const std::size_t row =
                coaction_row(n, s + 1, k - 1, monomial_index(n, grown), left & ~(std::uint32_t{1} << i), right);
            m.set(row, col, base.from_int(sign_of(below(left, i) % 2)));
          }
        }
      }
    }
  }
  return m;
}

CheckReport verify_model_exactness(std::size_t n, unsigned s_max, const BaseRing& base) {
  if (n == 0 || s_max == 0) throw std::invalid_argument("model complex needs n >= 1 and s_max >= 1");
  Json kernel_ranks = Json::array();
  std::size_t nodes = 0;
  // Node S: the unit map is injective because S -> Λ_0 is the identity.
  for (unsigned s = 0; s < s_max; ++s) {
    for (unsigned k = 0; k <= n; ++k) {
      ExactMatrix incoming = s == 0 ? (k == 0 ? ExactMatrix::identity(base, 1) : ExactMatrix(base, term_rank(n, 0, k), 0))
                                    : (k < n ? model_differential(n, s - 1, k + 1, base)
                                             : ExactMatrix(base, term_rank(n, s, k), 0));
      ExactMatrix outgoing = model_differential(n, s, k, base);
      if (!(outgoing * incoming).is_zero()) {
        return CheckReport::fail("consecutive model differentials do not compose to zero", Json{{"s", s}, {"k", k}});
      }
      auto h = linalg::subquotient_homology(incoming, outgoing);
      ++nodes;
      if (!h.invariants().is_zero()) {
        return CheckReport::fail("model complex is not exact", Json{{"s", s}, {"k", k}, {"homology", h.invariants().to_string()}});
      }
      if (k > 0) {
        const std::size_t kernel = term_rank(n, s, k) - linalg::rank(outgoing);
        kernel_ranks.push_back(Json{{"s", s}, {"k", k}, {"kernel_rank", kernel}});
        auto coker = linalg::cokernel_invariants(outgoing);
        if (!coker.is_free()) {
          return CheckReport::fail("image of a model differential is not saturated",
                                   Json{{"s", s}, {"k", k}, {"cokernel", coker.to_string()}});
        }
      }
    }
  }
  return CheckReport::pass("model complex of rank " + std::to_string(n) + " is exact through stage " +
                               std::to_string(s_max),
                           Json{{"n", n}, {"s_max", s_max}, {"base", base.name()}, {"nodes", nodes},
                                {"kernels", kernel_ranks}});
}

CheckReport verify_colinearity(std::size_t n, unsigned s_max, const BaseRing& base) {
  if (n == 0 || s_max == 0) throw std::invalid_argument("model complex needs n >= 1 and s_max >= 1");
  // Counit and coassociativity on the subsets themselves.
  for (std::uint32_t set = 0; set < (std::uint32_t{1} << n); ++set) {
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, int> lhs, rhs;
    for (std::uint32_t left : submasks(set)) {
      const std::uint32_t right = set & ~left;
      const int outer = shuffle_sign(left, right);
      for (std::uint32_t l1 : submasks(left)) lhs[{l1, left & ~l1, right}] += outer * shuffle_sign(l1, left & ~l1);
      for (std::uint32_t r1 : submasks(right)) rhs[{left, r1, right & ~r1}] += outer * shuffle_sign(r1, right & ~r1);
    }
    if (lhs != rhs) return CheckReport::fail("coproduct is not coassociative", Json{{"subset_bits", set}});
  }
  for (unsigned s = 0; s <= s_max; ++s) {
    for (unsigned k = 0; k <= n; ++k) {
      ExactMatrix co = coaction(n, s, k, base);
      const auto off = coaction_offsets(n, s, k);
      // Dropping the right factor (block a = k) must give back the input.
      if (!(co.row_range(off[k], off[k + 1]) == ExactMatrix::identity(base, term_rank(n, s, k))) ||
          !(co.row_range(off[0], off[1]) == ExactMatrix::identity(base, term_rank(n, s, k)))) {
        return CheckReport::fail("coaction is not counital", Json{{"s", s}, {"k", k}});
      }
      if (k == 0 || s == s_max) continue;
      ExactMatrix left = coaction(n, s + 1, k - 1, base) * model_differential(n, s, k, base);
      ExactMatrix right = differential_on_left(n, s, k, base) * co;
      if (!(left == right)) return CheckReport::fail("model differential is not colinear", Json{{"s", s}, {"k", k}});
    }
  }
  // S -> Λ_0 with the trivial coaction: Δ(1) = 1 ⊗ 1.
  if (!(coaction(n, 0, 0, base) == ExactMatrix::identity(base, 1))) {
    return CheckReport::fail("unit map is not colinear");
  }
  return CheckReport::pass("model differentials are comodule maps through stage " + std::to_string(s_max),
                           Json{{"n", n}, {"s_max", s_max}, {"base", base.name()}});
}

}  // namespace regtor::model
