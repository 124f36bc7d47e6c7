#include "regtor/exterior/exterior.hpp"

#include <random>
#include <stdexcept>

#include "regtor/common/random.hpp"

namespace regtor::exterior {

namespace {

int sign_power(std::size_t exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace

ExteriorElement ExteriorElement::basis(const RingContext& ctx, IndexSet s) {
  ExteriorElement e(ctx);
  e.add_term(s, ctx.one());
  return e;
}

ExteriorElement ExteriorElement::scalar(const RingContext& ctx, const Polynomial& c) {
  ExteriorElement e(ctx);
  e.add_term(IndexSet(), c);
  return e;
}

std::optional<std::size_t> ExteriorElement::homological_degree() const {
  std::optional<std::size_t> k;
  for (const auto& [s, c] : terms_) {
    if (k && *k != s.size()) return std::nullopt;
    k = s.size();
  }
  return k;
}

void ExteriorElement::add_term(IndexSet s, const Polynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (inserted) return;
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

ExteriorElement ExteriorElement::operator+(const ExteriorElement& rhs) const {
  ExteriorElement out = *this;
  for (const auto& [s, c] : rhs.terms_) out.add_term(s, c);
  return out;
}

ExteriorElement ExteriorElement::operator-(const ExteriorElement& rhs) const { return *this + rhs.scaled(-1); }

ExteriorElement ExteriorElement::scaled(const Polynomial& c) const {
  ExteriorElement out(base_, nvars_);
  for (const auto& [s, x] : terms_) out.add_term(s, x * c);
  return out;
}

ExteriorElement ExteriorElement::scaled(const linalg::Scalar& c) const {
  ExteriorElement out(base_, nvars_);
  for (const auto& [s, x] : terms_) out.add_term(s, x.scaled(c));
  return out;
}

std::string ExteriorElement::to_string(const RingContext& ctx) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + ctx.render(c) + ")*e" + s.to_string();
  }
  return out;
}

TensorElement TensorElement::basis(const RingContext& ctx, IndexSet left, IndexSet right) {
  TensorElement t(ctx);
  t.add_term(left, right, ctx.one());
  return t;
}

void TensorElement::add_term(IndexSet left, IndexSet right, const Polynomial& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
  if (inserted) return;
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

TensorElement TensorElement::operator+(const TensorElement& rhs) const {
  TensorElement out = *this;
  for (const auto& [k, c] : rhs.terms_) out.add_term(k.first, k.second, c);
  return out;
}

TensorElement TensorElement::operator-(const TensorElement& rhs) const { return *this + rhs.scaled(-1); }

TensorElement TensorElement::scaled(const linalg::Scalar& c) const {
  TensorElement out(base_, nvars_);
  for (const auto& [k, x] : terms_) out.add_term(k.first, k.second, x.scaled(c));
  return out;
}

std::string TensorElement::to_string(const RingContext& ctx) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + ctx.render(c) + ")*e" + k.first.to_string() + "(x)e" + k.second.to_string();
  }
  return out;
}

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
  ExteriorElement out(a.base(), a.nvars());
  for (const auto& [s, c] : a.terms()) {
    for (const auto& [t, d] : b.terms()) {
      const int sign = merge_sign(s, t);
      if (sign == 0) continue;
      out.add_term(s | t, (c * d).scaled(sign));
    }
  }
  return out;
}

ExteriorElement koszul_diff(const RingContext& ctx, const ExteriorElement& a) {
  ExteriorElement out(ctx);
  for (const auto& [s, c] : a.terms()) {
    for (std::size_t j : s.elements()) {
      out.add_term(s.without(j), (c * ctx.sequence()[j]).scaled(sign_power(position(j, s))));
    }
  }
  return out;
}

TensorElement coproduct(const ExteriorElement& a) {
  TensorElement out(a.base(), a.nvars());
  for (const auto& [s, c] : a.terms()) {
    // Enumerate submasks of s.
    const std::uint32_t full = s.bits();
    for (std::uint32_t sub = full;; sub = (sub - 1) & full) {
      IndexSet left = IndexSet::from_bits(sub);
      IndexSet right = s - left;
      out.add_term(left, right, c.scaled(merge_sign(left, right)));
      if (sub == 0) break;
    }
  }
  return out;
}

TensorElement twist(const TensorElement& t) {
  TensorElement out(t.base(), t.nvars());
  for (const auto& [k, c] : t.terms()) {
    out.add_term(k.second, k.first, c.scaled(sign_power(k.first.size() * k.second.size())));
  }
  return out;
}

TensorElement diff_left(const RingContext& ctx, const TensorElement& t) {
  TensorElement out(ctx);
  for (const auto& [k, c] : t.terms()) {
    for (std::size_t j : k.first.elements()) {
      out.add_term(k.first.without(j), k.second,
                   (c * ctx.sequence()[j]).scaled(sign_power(position(j, k.first))));
    }
  }
  return out;
}

TensorElement tensor_diff(const RingContext& ctx, const TensorElement& t) {
  TensorElement out = diff_left(ctx, t);
  for (const auto& [k, c] : t.terms()) {
    const int outer = sign_power(k.first.size());
    for (std::size_t j : k.second.elements()) {
      out.add_term(k.first, k.second.without(j),
                   (c * ctx.sequence()[j]).scaled(outer * sign_power(position(j, k.second))));
    }
  }
  return out;
}

TensorElement tensor_product(const TensorElement& x, const TensorElement& y) {
  TensorElement out(x.base(), x.nvars());
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      const int s1 = merge_sign(kx.first, ky.first);
      const int s2 = merge_sign(kx.second, ky.second);
      if (s1 == 0 || s2 == 0) continue;
      const int sign = s1 * s2 * sign_power(kx.second.size() * ky.first.size());
      out.add_term(kx.first | ky.first, kx.second | ky.second, (cx * cy).scaled(sign));
    }
  }
  return out;
}

ExteriorElement counit_left(const TensorElement& t) {
  ExteriorElement out(t.base(), t.nvars());
  for (const auto& [k, c] : t.terms()) {
    if (k.first.empty()) out.add_term(k.second, c);
  }
  return out;
}

ExteriorElement counit_right(const TensorElement& t) {
  ExteriorElement out(t.base(), t.nvars());
  for (const auto& [k, c] : t.terms()) {
    if (k.second.empty()) out.add_term(k.first, c);
  }
  return out;
}

namespace {

Polynomial random_coefficient(std::mt19937_64& rng, const RingContext& ctx) {
  Polynomial p = ctx.zero();
  const long terms = uniform_int(rng, 1, 3);
  for (long t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(ctx.n(), 0);
    const long total = uniform_int(rng, 0, 4);
    for (long u = 0; u < total; ++u) ++exps[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(ctx.n()) - 1))];
    p.add_term(poly::Monomial(exps), uniform_int(rng, -5, 5));
  }
  return p;
}

ExteriorElement random_homogeneous(std::mt19937_64& rng, const RingContext& ctx, std::size_t k) {
  ExteriorElement e(ctx);
  const auto subsets = subsets_of_size(ctx.n(), k);
  const long terms = uniform_int(rng, 1, 3);
  for (long t = 0; t < terms; ++t) {
    IndexSet s = subsets[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(subsets.size()) - 1))];
    e.add_term(s, random_coefficient(rng, ctx));
  }
  return e;
}

struct IdentityChecker {
  const RingContext& ctx;
  std::size_t evaluations = 0;

  // Returns the name of the first identity violated by a, if any.
  std::optional<std::string> unary(const ExteriorElement& a) {
    ++evaluations;
    const ExteriorElement da = koszul_diff(ctx, a);
    if (!koszul_diff(ctx, da).is_zero()) return "d∘d = 0";
    const TensorElement delta = coproduct(a);
    const TensorElement delta_d = coproduct(da);
    if (!(delta_d == diff_left(ctx, delta))) return "Δ∘d = (d⊗1)∘Δ";
    if (!(tensor_diff(ctx, delta) == delta_d.scaled(2))) return "d^⊗∘Δ = 2(Δ∘d)";
    if (!(delta == twist(delta))) return "Δ = τ∘Δ";
    return std::nullopt;
  }

  std::optional<std::string> binary(const ExteriorElement& a, const ExteriorElement& b) {
    ++evaluations;
    const std::size_t p = a.homological_degree().value_or(0);
    const ExteriorElement lhs = koszul_diff(ctx, wedge(a, b));
    ExteriorElement rhs = wedge(koszul_diff(ctx, a), b);
    const ExteriorElement second = wedge(a, koszul_diff(ctx, b));
    rhs = p % 2 == 0 ? rhs + second : rhs - second;
    if (!(lhs == rhs)) return "d(a∧b) = d(a)∧b + (-1)^|a| a∧d(b)";
    return std::nullopt;
  }
};

}  // namespace

CheckReport verify_bialgebra_identities(const RingContext& ctx, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("verify_bialgebra_identities: trials must be positive");
  IdentityChecker check{ctx};
  auto failure = [&](const std::string& identity, const std::string& origin, const ExteriorElement& a,
                     const ExteriorElement* b) {
    Json witness{{"identity", identity}, {"origin", origin}, {"element", a.to_string(ctx)}};
    if (b) witness["second_element"] = b->to_string(ctx);
    return CheckReport::fail("identity " + identity + " fails on " + origin + " input", witness);
  };

  std::vector<IndexSet> basis;
  for (std::size_t k = 0; k <= ctx.n(); ++k) {
    for (IndexSet s : subsets_of_size(ctx.n(), k)) basis.push_back(s);
  }
  for (IndexSet s : basis) {
    auto e = ExteriorElement::basis(ctx, s);
    if (auto bad = check.unary(e)) return failure(*bad, "basis", e, nullptr);
  }
  for (IndexSet s : basis) {
    for (IndexSet t : basis) {
      auto a = ExteriorElement::basis(ctx, s);
      auto b = ExteriorElement::basis(ctx, t);
      if (auto bad = check.binary(a, b)) return failure(*bad, "basis", a, &b);
    }
  }

  std::mt19937_64 rng(seed);
  const long n = static_cast<long>(ctx.n());
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto a = random_homogeneous(rng, ctx, static_cast<std::size_t>(uniform_int(rng, 0, n)));
    auto b = random_homogeneous(rng, ctx, static_cast<std::size_t>(uniform_int(rng, 0, n)));
    if (auto bad = check.unary(a + b)) return failure(*bad, "random", a + b, nullptr);
    if (auto bad = check.binary(a, b)) return failure(*bad, "random", a, &b);
  }

  return CheckReport::pass(
      "all five identities hold on basis elements and random elements",
      Json{{"basis_elements", basis.size()},
           {"basis_pairs", basis.size() * basis.size()},
           {"random_trials", trials},
           {"seed", seed},
           {"identities",
            {"d∘d = 0", "d(a∧b) = d(a)∧b + (-1)^|a| a∧d(b)", "Δ∘d = (d⊗1)∘Δ", "d^⊗∘Δ = 2(Δ∘d)", "Δ = τ∘Δ"}}});
}

}  // namespace regtor::exterior
