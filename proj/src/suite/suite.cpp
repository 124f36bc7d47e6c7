#include "regtor/suite/suite.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "regtor/common/digest.hpp"
#include "regtor/exterior/exterior.hpp"
#include "regtor/model/model_complex.hpp"

namespace regtor::suite {

namespace {

using exterior::IndexSet;
using linalg::ExactMatrix;
using linalg::ImageSolver;
using linalg::Scalar;
using linalg::Vector;
using modules::FiltrationModule;
using modules::SesTag;
using poly::Polynomial;
using poly::RingContext;

struct CheckInfo {
  CheckId id;
  const char* name;
  const char* claim;
};

const CheckInfo kChecks[] = {
    {CheckId::kRegularity, "REGULARITY", "r_1..r_n is a regular sequence in every degree up to the bound"},
    {CheckId::kBialgebra, "BIALGEBRA",
     "Koszul differential and exterior coproduct satisfy the bialgebra identities"},
    {CheckId::kKoszulResolution, "KOSZUL_RESOLUTION", "Koszul homology vanishes above degree 0 and H_0 = R/I"},
    {CheckId::kCorTor, "COR_TOR", "Tor(R/I, R/I) is the exterior algebra over R/I on the classes of e_j"},
    {CheckId::kPropGr, "PROP_GR", "gr_I(R) is the symmetric algebra over R/I on the classes {r_j}"},
    {CheckId::kModelExact, "MODEL_EXACT", "the model complex is exact with free kernels"},
    {CheckId::kModelColinear, "MODEL_COLINEAR", "model differentials commute with the extended coaction"},
    {CheckId::kSingular, "SINGULAR", "the truncated associated graded extension has square-zero kernel"},
    {CheckId::kLeibniz, "LEIBNIZ", "the connecting map of the singular extension is a derivation"},
    {CheckId::kDelta0, "DELTA0", "the first connecting map sends e_j to -{r_j}"},
    {CheckId::kPropSequence, "PROP_SEQUENCE", "the connecting maps delta^s agree with the model differentials"},
    {CheckId::kFactorization, "FACTORIZATION",
     "delta^s factors through the connecting map of 0 -> I^{s+1} -> I^s -> I^s/I^{s+1} -> 0"},
    {CheckId::kLongSequence, "LONG_SEQUENCE",
     "0 -> R/I -> Tor(R/I, R/I) -> Tor(R/I, I/I^2) -> ... is exact"},
    {CheckId::kTheorem1, "THEOREM1",
     "0 -> Tor_k(I^s) -> Tor_k(I^s/I^{s+1}) -> Tor_{k-1}(I^{s+1}) -> 0 is exact with free terms"},
};

const CheckInfo& info(CheckId id) {
  for (const auto& c : kChecks) {
    if (c.id == id) return c;
  }
  throw std::invalid_argument("unknown check id");
}

std::string order_name(linalg::PivotOrder order) {
  return order == linalg::PivotOrder::kNatural ? "natural" : "reversed";
}

unsigned subset_degree(const RingContext& ctx, IndexSet t) {
  unsigned d = 0;
  for (std::size_t j : t.elements()) d += ctx.seq_degree(j);
  return d;
}

unsigned power_degree(const RingContext& ctx, const model::Exponents& alpha) {
  unsigned d = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) d += alpha[i] * ctx.seq_degree(i);
  return d;
}

Polynomial sequence_power(const RingContext& ctx, const model::Exponents& alpha) {
  Polynomial p = ctx.one();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0) p = p * ctx.sequence()[i].pow(alpha[i]);
  }
  return p;
}

/// e_T ⊗ p in cell (|T|, d), with p read in component `component` of m.
Vector basic_chain(const tor::KoszulTensorComplex& complex, const FiltrationModule& m, std::size_t component,
                   IndexSet t, const Polynomial& p, unsigned d) {
  Vector chain(complex.dimension(static_cast<unsigned>(t.size()), d));
  const auto* block = complex.find_block(d, t);
  if (!block) throw std::logic_error("no block for e_" + t.to_string() + " in degree " + std::to_string(d));
  Vector coords = m.class_of(component, p, block->module_degree);
  for (std::size_t i = 0; i < coords.size(); ++i) chain[block->offset + i] = coords[i];
  return chain;
}

ExactMatrix empty_matrix(const RingContext& ctx, std::size_t rows = 0, std::size_t cols = 0) {
  return ExactMatrix(ctx.base(), rows, cols);
}

bool zero_modulo(const Vector& v, const ExactMatrix& relations) {
  if (linalg::is_zero(v)) return true;
  return ImageSolver(relations).solve(v).has_value();
}

/// First column where a and b differ modulo the relations of their target.
std::optional<std::size_t> first_difference(const ExactMatrix& a, const ExactMatrix& b,
                                            const ExactMatrix& relations) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::logic_error("shape mismatch in comparison");
  const ExactMatrix diff = a - b;
  if (diff.is_zero()) return std::nullopt;
  ImageSolver solver(relations);
  for (std::size_t c = 0; c < diff.cols(); ++c) {
    Vector v = diff.column_vector(c);
    if (!linalg::is_zero(v) && !solver.solve(v)) return c;
  }
  return std::nullopt;
}

std::string map_digest(const tor::TorMap& map) {
  std::string all;
  for (const auto& row : map.cells) {
    for (const auto& m : row) all += matrix_digest(m) + ";";
  }
  return sha256_hex(all);
}

long small_value(const linalg::BaseRing& base, const Scalar& x) {
  Scalar v = base.normalize(x);
  if (base.is_field() && base.name() != "Q") {
    // Print residues symmetrically so -1 reads as -1.
    mpz_class p(base.name().substr(1));
    mpz_class r = v.get_num();
    if (2 * r > p) r -= p;
    return r.get_si();
  }
  return v.get_num().get_si();
}

Json cell_witness(unsigned s, unsigned k, unsigned d, std::string what) {
  return Json{{"s", s}, {"k", k}, {"d", d}, {"failure", std::move(what)}};
}

/// Tor classes of the chains e_T ⊗ {r^α} in Tor_k(R/I, I^s/I^{s+1})_d, one
/// per basis element f^α ⊗ e_T of the model term Sym^s ⊗ Λ_k of degree d.
struct PsiBasis {
  std::vector<std::size_t> model_index;
  ExactMatrix classes;
};

class PsiDictionary {
 public:
  explicit PsiDictionary(Workspace& ws) : ws_(ws) {}

  const PsiBasis& get(unsigned s, unsigned k, unsigned d) {
    auto key = std::make_tuple(s, k, d);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const auto& ctx = ws_.ctx();
    auto graded = ws_.modules().quotient(s, s + 1);
    const auto& t = ws_.tor(graded);
    PsiBasis basis{{}, empty_matrix(ctx, t.generator_count(k, d), 0)};
    for (const auto& alpha : model::sym_basis(ctx.n(), s)) {
      for (std::uint32_t bits : model::wedge_basis(ctx.n(), k)) {
        IndexSet subset = IndexSet::from_bits(bits);
        if (power_degree(ctx, alpha) + subset_degree(ctx, subset) != d) continue;
        Vector chain = basic_chain(t.complex(), *graded, 0, subset, sequence_power(ctx, alpha), d);
        basis.model_index.push_back(model::term_index(ctx.n(), alpha, bits));
        basis.classes.append_column(t.class_of(k, d, chain));
      }
    }
    return cache_.emplace(key, std::move(basis)).first->second;
  }

 private:
  Workspace& ws_;
  std::map<std::tuple<unsigned, unsigned, unsigned>, PsiBasis> cache_;
};

bool is_signed_permutation(const linalg::BaseRing& base, const ExactMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::set<std::size_t> rows_hit;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto& col = m.column(c);
    if (col.size() != 1) return false;
    const auto& [r, x] = *col.begin();
    long v = small_value(base, x);
    if (v != 1 && v != -1) return false;
    if (!rows_hit.insert(r).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

CheckReport check_regularity(Workspace& ws) {
  return poly::check_regular_sequence(ws.ctx(), ws.options().degree_max);
}

CheckReport check_bialgebra(Workspace& ws) {
  return exterior::verify_bialgebra_identities(ws.ctx(), ws.options().bialgebra_trials, ws.options().seed);
}

CheckReport check_koszul_resolution(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const unsigned bound = ws.options().degree_max;
  const auto& t = ws.tor(ws.modules().power(0));
  Json h0 = Json::array();
  for (unsigned d = 0; d <= bound; ++d) {
    for (unsigned k = 1; k <= ctx.n(); ++k) {
      if (!t.invariants(k, d).is_zero()) {
        Vector cycle = t.representative(k, d, linalg::unit_vector(ctx.base(), t.generator_count(k, d), 0));
        return CheckReport::fail("Koszul homology H_" + std::to_string(k) + " is nonzero in degree " +
                                     std::to_string(d),
                                 Json{{"k", k}, {"d", d}, {"homology", t.invariants(k, d).to_string()},
                                      {"cycle", linalg::to_string(cycle)}});
      }
    }
    auto expected = linalg::cokernel_invariants(modules::ideal_power_lattice(ctx, 1, d));
    if (!(t.invariants(0, d) == expected)) {
      return CheckReport::fail("H_0 differs from R/I in degree " + std::to_string(d),
                               Json{{"k", 0}, {"d", d}, {"homology", t.invariants(0, d).to_string()},
                                    {"expected", expected.to_string()}});
    }
    h0.push_back(t.invariants(0, d).to_string());
  }
  return CheckReport::pass("H_k = 0 for 1 <= k <= " + std::to_string(ctx.n()) + " and H_0 = R/I up to degree " +
                               std::to_string(bound),
                           Json{{"degree_bound", bound}, {"h0_by_degree", h0}});
}

CheckReport check_cor_tor(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const std::size_t n = ctx.n();
  const unsigned bound = ws.options().degree_max;
  auto quotient = ws.modules().quotient(0, 1);
  const auto& t = ws.tor(quotient);
  const auto& c = t.complex();

  Json ranks = Json::array();
  for (unsigned k = 0; k <= n; ++k) {
    Json row = Json::array();
    for (unsigned d = 0; d <= bound; ++d) {
      if (k > 0) {
        const ExactMatrix& diff = c.differential(k, d);
        for (std::size_t col = 0; col < diff.cols(); ++col) {
          if (!zero_modulo(diff.column_vector(col), c.relations(k - 1, d))) {
            return CheckReport::fail("Koszul differential on Λ ⊗ R/I is not zero",
                                     Json{{"k", k}, {"d", d}, {"column", col}});
          }
        }
      }
      auto expected = linalg::cokernel_invariants(c.relations(k, d));
      if (!(t.invariants(k, d) == expected)) {
        return CheckReport::fail("Tor_" + std::to_string(k) + " differs from Λ_k ⊗ R/I in degree " +
                                     std::to_string(d),
                                 Json{{"k", k}, {"d", d}, {"tor", t.invariants(k, d).to_string()},
                                      {"expected", expected.to_string()}});
      }
      row.push_back(t.invariants(k, d).free_rank);
    }
    ranks.push_back(row);
  }

  // Products of the classes of e_T.
  const auto& ses = ws.ses(SesTag::r_over_i());
  const auto& mu = *ses.algebra()->quotient_product;
  std::vector<IndexSet> subsets;
  for (unsigned k = 0; k <= n; ++k) {
    for (IndexSet s : exterior::subsets_of_size(n, k)) {
      if (subset_degree(ctx, s) <= bound) subsets.push_back(s);
    }
  }
  auto class_of_subset = [&](IndexSet s) {
    const unsigned d = subset_degree(ctx, s);
    const auto k = static_cast<unsigned>(s.size());
    return tor::TorClass{k, d, t.class_of(k, d, basic_chain(c, *quotient, 0, s, ctx.one(), d))};
  };
  std::size_t products = 0;
  for (IndexSet a : subsets) {
    for (IndexSet b : subsets) {
      if (a.size() + b.size() > n || subset_degree(ctx, a) + subset_degree(ctx, b) > bound) continue;
      auto product = tor::tor_product(mu, t, t, t, class_of_subset(a), class_of_subset(b));
      Vector expected(product.coordinates.size());
      if (int sign = exterior::merge_sign(a, b); sign != 0) {
        expected = linalg::scale(ctx.base(), ctx.base().from_int(sign), class_of_subset(a | b).coordinates);
      }
      Vector diff = linalg::sub(ctx.base(), product.coordinates, expected);
      if (!zero_modulo(diff, t.relations(product.k, product.d))) {
        return CheckReport::fail("class(e_S) * class(e_T) differs from the wedge product",
                                 Json{{"left", a.to_string()}, {"right", b.to_string()},
                                      {"product", linalg::to_string(product.coordinates)},
                                      {"expected", linalg::to_string(expected)}});
      }
      ++products;
    }
  }
  return CheckReport::pass("Tor(R/I, R/I) = Λ ⊗ R/I with wedge products on " + std::to_string(products) + " pairs",
                           Json{{"degree_bound", bound}, {"free_rank_by_k_and_degree", ranks},
                                {"products_checked", products}});
}

CheckReport check_prop_gr(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const std::size_t n = ctx.n();
  const unsigned bound = ws.options().degree_max;
  const unsigned s_max = ws.options().s_max;
  auto quotient = ws.modules().quotient(0, 1);

  Json ranks = Json::array();
  for (unsigned s = 0; s <= s_max; ++s) {
    auto graded = ws.modules().quotient(s, s + 1);
    const auto alphas = model::sym_basis(n, s);
    Json row = Json::array();
    for (unsigned d = 0; d <= bound; ++d) {
      ExactMatrix map = empty_matrix(ctx, graded->generators(d), 0);
      std::vector<ExactMatrix> source_relations;
      for (const auto& alpha : alphas) {
        const unsigned e = power_degree(ctx, alpha);
        if (e > d) continue;
        const Polynomial power = sequence_power(ctx, alpha);
        for (std::size_t g = 0; g < quotient->generators(d - e); ++g) {
          map.append_column(graded->class_of(0, quotient->representative(d - e, g) * power, d));
        }
        source_relations.push_back(quotient->relations(d - e));
      }
      ExactMatrix relations = linalg::block_diagonal(ctx.base(), source_relations);
      if (relations.rows() != map.cols()) relations = empty_matrix(ctx, map.cols(), 0);
      if (!linalg::presented_injective(map, relations, graded->relations(d))) {
        return CheckReport::fail("the classes {r^α} are not free over R/I",
                                 Json{{"s", s}, {"d", d}, {"failure", "not injective"}});
      }
      if (!linalg::presented_surjective(map, graded->relations(d))) {
        return CheckReport::fail("the classes {r^α} do not generate I^s/I^{s+1}",
                                 Json{{"s", s}, {"d", d}, {"failure", "not surjective"}});
      }
      row.push_back(graded->invariants(d).free_rank);
    }
    ranks.push_back(row);
  }

  // Multiplicativity in the truncated associated graded algebra.
  const auto& singular = ws.ses(SesTag::singular(s_max));
  const auto& mu = *singular.algebra()->quotient_product;
  const auto& gr = singular.right();
  std::size_t pairs = 0;
  for (unsigned s = 0; s <= s_max; ++s) {
    for (unsigned t = 0; s + t <= s_max; ++t) {
      for (const auto& a : model::sym_basis(n, s)) {
        for (const auto& b : model::sym_basis(n, t)) {
          const unsigned da = power_degree(ctx, a);
          const unsigned db = power_degree(ctx, b);
          if (da + db > bound) continue;
          model::Exponents sum(n);
          for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
          Vector product = mu.apply(da, db, gr.class_of(s, sequence_power(ctx, a), da),
                                    gr.class_of(t, sequence_power(ctx, b), db));
          Vector expected = gr.class_of(s + t, sequence_power(ctx, sum), da + db);
          if (!zero_modulo(linalg::sub(ctx.base(), product, expected), gr.relations(da + db))) {
            return CheckReport::fail("{r^α}{r^β} differs from {r^{α+β}}",
                                     Json{{"alpha", a}, {"beta", b}, {"product", linalg::to_string(product)},
                                          {"expected", linalg::to_string(expected)}});
          }
          ++pairs;
        }
      }
    }
  }
  return CheckReport::pass("I^s/I^{s+1} is free over R/I on {r^α}, |α| = s <= " + std::to_string(s_max) +
                               ", and products are multiplicative on " + std::to_string(pairs) + " pairs",
                           Json{{"degree_bound", bound}, {"free_rank_by_s_and_degree", ranks},
                                {"products_checked", pairs}});
}

CheckReport check_model_exact(Workspace& ws) {
  return model::verify_model_exactness(ws.ctx().n(), ws.options().s_max, ws.ctx().base());
}

CheckReport check_model_colinear(Workspace& ws) {
  return model::verify_colinearity(ws.ctx().n(), ws.options().s_max, ws.ctx().base());
}

CheckReport check_singular(Workspace& ws) {
  return modules::check_singular(ws.ses(SesTag::singular(ws.options().s_max)), ws.options().degree_max);
}

CheckReport check_leibniz(Workspace& ws) {
  const SesTag tag = SesTag::singular(ws.options().s_max);
  const auto& ses = ws.ses(tag);
  const auto& connecting = ws.connecting(tag);
  CheckReport report = tor::verify_leibniz(ses, ws.tor(ses.left_ptr()), ws.tor(ses.right_ptr()), connecting,
                                           ws.options().degree_max, ws.options().threads);
  if (report.payload.is_object()) report.payload["connecting_sign"] = tor::kConnectingSign;
  return report;
}

CheckReport check_delta0(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const std::size_t n = ctx.n();
  const auto& base = ctx.base();
  const unsigned bound = ws.options().degree_max;
  const SesTag tag = SesTag::filtration(0);
  const auto& connecting = ws.connecting(tag);
  const auto& target = ws.tor(ws.ses(tag).left_ptr());
  PsiDictionary psi(ws);

  Json matrix = Json::array();
  Json images = Json::array();
  std::vector<std::vector<Scalar>> entries(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t j = 0; j < n; ++j) {
    const unsigned d = ctx.seq_degree(j);
    if (d > bound) {
      return CheckReport::fail("deg r_" + std::to_string(j + 1) + " exceeds the degree bound",
                               Json{{"generator", j + 1}, {"d", d}});
    }
    const auto& source = psi.get(0, 1, d);
    const auto& names = psi.get(1, 0, d);
    std::size_t col = 0;
    const std::size_t wanted = model::term_index(n, model::Exponents(n, 0), IndexSet::singleton(j).bits());
    while (source.model_index.at(col) != wanted) ++col;
    Vector image = connecting.at(1, d).apply(source.classes.column_vector(col));
    auto solution = ImageSolver(names.classes.hstack(target.relations(0, d))).solve(image);
    if (!solution) {
      return CheckReport::fail("delta^0(e_j) is not a combination of the classes {r_i}",
                               Json{{"generator", j + 1}, {"image", linalg::to_string(image)}});
    }
    std::string text;
    for (std::size_t i = 0; i < names.model_index.size(); ++i) {
      // Sym^1 ⊗ Λ_0 is indexed by monomials f_i in decreasing lex order, i.e. by i.
      const std::size_t row = names.model_index[i];
      entries[row][j] = base.normalize((*solution)[i]);
      const long v = small_value(base, entries[row][j]);
      if (v == 0) continue;
      text += (v < 0 ? (text.empty() ? "-" : " - ") : (text.empty() ? "" : " + "));
      if (v != 1 && v != -1) text += std::to_string(v < 0 ? -v : v) + "*";
      text += "{" + ctx.render(ctx.sequence()[row]) + "}";
    }
    images.push_back("e_" + std::to_string(j + 1) + " -> " + (text.empty() ? "0" : text));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar expected = base.from_int(i == j ? -1 : 0);
      if (entries[i][j] != expected) {
        return CheckReport::fail("delta^0 differs from -identity on (e_j) -> ({r_j})",
                                 Json{{"row", i + 1}, {"column", j + 1}, {"entry", small_value(base, entries[i][j])},
                                      {"expected", small_value(base, expected)}},
                                 Json{{"images", images}});
      }
      row.push_back(small_value(base, entries[i][j]));
    }
    matrix.push_back(row);
  }
  Json payload{{"connecting_sign", tor::kConnectingSign}, {"degree_bound", bound}, {"images", images},
               {"matrix", matrix}, {"digest", map_digest(connecting)}};
  return CheckReport::pass("delta^0(e_j) = -{r_j} for j = 1.." + std::to_string(n), std::move(payload));
}

CheckReport check_prop_sequence(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const std::size_t n = ctx.n();
  const auto& base = ctx.base();
  const unsigned bound = ws.options().degree_max;
  const unsigned s_max = ws.options().s_max;
  const bool strict = is_variable_sequence(ctx);
  PsiDictionary psi(ws);

  std::size_t entries = 0;
  std::size_t beyond = 0;
  Json change_of_basis = Json::array();
  bool all_signed = true;
  std::set<std::tuple<unsigned, unsigned, unsigned>> recorded;
  auto record = [&](unsigned s, unsigned k, unsigned d, const PsiBasis& b) {
    if (!recorded.insert({s, k, d}).second) return;
    const bool signed_perm = is_signed_permutation(base, b.classes);
    all_signed = all_signed && signed_perm;
    change_of_basis.push_back(Json{{"s", s}, {"k", k}, {"d", d}, {"rows", b.classes.rows()},
                                   {"cols", b.classes.cols()}, {"signed_permutation", signed_perm},
                                   {"digest", matrix_digest(b.classes)}});
  };

  Json digests = Json::array();
  for (unsigned s = 0; s <= s_max; ++s) {
    const SesTag tag = SesTag::filtration(s);
    const auto& connecting = ws.connecting(tag);
    const auto& target = ws.tor(ws.ses(tag).left_ptr());
    digests.push_back(map_digest(connecting));
    for (unsigned k = 1; k <= n; ++k) {
      const ExactMatrix model = model::model_differential(n, s, k, base);
      for (const auto& alpha : model::sym_basis(n, s)) {
        for (std::uint32_t bits : model::wedge_basis(n, k)) {
          if (power_degree(ctx, alpha) + subset_degree(ctx, IndexSet::from_bits(bits)) > bound) ++beyond;
        }
      }
      for (unsigned d = 0; d <= bound; ++d) {
        const auto& source = psi.get(s, k, d);
        if (source.model_index.empty()) continue;
        const auto& names = psi.get(s + 1, k - 1, d);
        record(s, k, d, source);
        record(s + 1, k - 1, d, names);
        std::map<std::size_t, std::size_t> position;
        for (std::size_t i = 0; i < names.model_index.size(); ++i) position[names.model_index[i]] = i;
        ImageSolver solver(names.classes.hstack(target.relations(k - 1, d)));
        for (std::size_t c = 0; c < source.model_index.size(); ++c) {
          Vector image = connecting.at(k, d).apply(source.classes.column_vector(c));
          auto solution = solver.solve(image);
          if (!solution) {
            return CheckReport::fail("delta^s of a named class leaves the span of the named classes",
                                     cell_witness(s, k, d, "column " + std::to_string(source.model_index[c])));
          }
          Vector expected(names.model_index.size());
          for (const auto& [row, x] : model.column(source.model_index[c])) {
            auto it = position.find(row);
            if (it == position.end()) {
              return CheckReport::fail("model differential has a term outside the named basis",
                                       cell_witness(s, k, d, "model row " + std::to_string(row)));
            }
            expected[it->second] = x;
          }
          for (std::size_t i = 0; i < expected.size(); ++i) {
            const Scalar got = base.neg((*solution)[i]);
            if (base.normalize(got) != base.normalize(expected[i])) {
              Json w = cell_witness(s, k, d, "entry mismatch");
              w["model_row"] = names.model_index[i];
              w["model_column"] = source.model_index[c];
              w["conjugated"] = small_value(base, got);
              w["model"] = small_value(base, expected[i]);
              return CheckReport::fail("psi-conjugated delta^s differs from the model differential", w);
            }
            ++entries;
          }
        }
      }
    }
  }

  if (strict && !all_signed) {
    return CheckReport::fail("change of basis to the named classes is not a signed permutation",
                             Json{{"change_of_basis", change_of_basis}});
  }

  // The unit: eta(1) is the named class of f^0 ⊗ e_∅.
  const SesTag unit_tag = SesTag::r_over_i();
  auto ring = ws.modules().power(0);
  const auto& ring_tor = ws.tor(ring);
  Vector one = ring_tor.class_of(0, 0, basic_chain(ring_tor.complex(), *ring, 0, IndexSet(), ctx.one(), 0));
  Vector eta_one = ws.projection_on_tor(unit_tag).at(0, 0).apply(one);
  const auto& unit = psi.get(0, 0, 0);
  const auto& quotient_tor = ws.tor(ws.modules().quotient(0, 1));
  if (!zero_modulo(linalg::sub(base, eta_one, unit.classes.column_vector(0)), quotient_tor.relations(0, 0))) {
    return CheckReport::fail("eta(1) is not the named class of 1 ⊗ e_∅",
                             Json{{"eta_one", linalg::to_string(eta_one)}});
  }

  Json payload{{"psi", "e_j -> e_j, {r_j} -> -f_j"},
               {"connecting_sign", tor::kConnectingSign},
               {"degree_bound", bound},
               {"entries_compared", entries},
               {"cells_beyond_degree_bound", beyond},
               {"strict_change_of_basis", strict},
               {"change_of_basis", change_of_basis},
               {"delta_digests", digests}};
  return CheckReport::pass("delta^s matches the model differential for s <= " + std::to_string(s_max) + " on " +
                               std::to_string(entries) + " entries",
                           std::move(payload));
}

CheckReport check_factorization(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const std::size_t n = ctx.n();
  const unsigned bound = ws.options().degree_max;
  const unsigned s_max = ws.options().s_max;
  std::size_t cells = 0;
  for (unsigned s = 0; s <= s_max; ++s) {
    const SesTag filtration = SesTag::filtration(s);
    const SesTag defining = SesTag::defining(s);
    const auto& delta = ws.connecting(filtration);
    const auto& epsilon = ws.connecting(defining);
    const auto& reduction = ws.reduction_on_tor(s);
    const auto& target = ws.tor(ws.ses(filtration).left_ptr());
    for (unsigned k = 1; k <= n; ++k) {
      for (unsigned d = 0; d <= bound; ++d) {
        ExactMatrix composite = reduction.at(k - 1, d) * epsilon.at(k, d);
        if (auto c = first_difference(delta.at(k, d), composite, target.relations(k - 1, d))) {
          Json w = cell_witness(s, k, d, "delta^s differs from (p_{s+1})_* epsilon^s");
          w["column"] = *c;
          return CheckReport::fail("delta^s does not factor through epsilon^s", w);
        }
        ++cells;
      }
    }
    for (SesTag tag : {defining, filtration}) {
      const auto& natural = ws.connecting(tag);
      const auto& reversed = ws.connecting(tag, linalg::PivotOrder::kReversed);
      for (unsigned k = 0; k <= n; ++k) {
        for (unsigned d = 0; d <= bound; ++d) {
          if (!(natural.at(k, d) == reversed.at(k, d))) {
            Json w = cell_witness(s, k, d, "alternate lift gives a different map");
            w["sequence"] = tag.label();
            return CheckReport::fail("connecting map depends on the lift", w);
          }
        }
      }
    }
  }
  return CheckReport::pass("delta^s = (p_{s+1})_* epsilon^s on " + std::to_string(cells) +
                               " cells; connecting maps agree under the alternate lift",
                           Json{{"connecting_sign", tor::kConnectingSign}, {"degree_bound", bound},
                                {"cells_compared", cells}, {"alternate_lift_agrees", true}});
}

CheckReport check_long_sequence(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const std::size_t n = ctx.n();
  const unsigned bound = ws.options().degree_max;
  const unsigned s_max = ws.options().s_max;

  const auto& eta = ws.projection_on_tor(SesTag::r_over_i());
  const auto& ring_tor = ws.tor(ws.modules().power(0));
  std::vector<const tor::TorModule*> graded;
  std::vector<const tor::TorMap*> delta;
  for (unsigned s = 0; s <= s_max + 1; ++s) graded.push_back(&ws.tor(ws.modules().quotient(s, s + 1)));
  Json digests = Json::array();
  for (unsigned s = 0; s <= s_max; ++s) {
    delta.push_back(&ws.connecting(SesTag::filtration(s)));
    digests.push_back(map_digest(*delta.back()));
  }

  std::size_t nodes = 0;
  for (unsigned d = 0; d <= bound; ++d) {
    if (!linalg::presented_injective(eta.at(0, d), ring_tor.relations(0, d), graded[0]->relations(0, d))) {
      return CheckReport::fail("eta is not injective", Json{{"d", d}, {"node", "R/I"}});
    }
    ++nodes;
    for (unsigned s = 0; s <= s_max; ++s) {
      for (unsigned k = 0; k <= n; ++k) {
        const std::size_t here = graded[s]->generator_count(k, d);
        ExactMatrix incoming = empty_matrix(ctx, here, 0);
        if (s == 0 && k == 0) {
          incoming = eta.at(0, d);
        } else if (s > 0 && k + 1 <= n) {
          incoming = delta[s - 1]->at(k + 1, d);
        }
        const ExactMatrix& outgoing = delta[s]->at(k, d);
        const ExactMatrix out_relations =
            k > 0 ? graded[s + 1]->relations(k - 1, d) : empty_matrix(ctx, 0, 0);
        if (!tor::exact_at(incoming, outgoing, graded[s]->relations(k, d), out_relations)) {
          return CheckReport::fail("the spliced sequence is not exact at Tor_" + std::to_string(k) +
                                       "(R/I, I^" + std::to_string(s) + "/I^" + std::to_string(s + 1) + ")",
                                   cell_witness(s, k, d, "homology at node"));
        }
        ++nodes;
      }
    }
  }
  return CheckReport::pass("exact at " + std::to_string(nodes) + " nodes through stage " + std::to_string(s_max),
                           Json{{"connecting_sign", tor::kConnectingSign}, {"degree_bound", bound},
                                {"nodes_checked", nodes}, {"delta_digests", digests}});
}

CheckReport check_theorem1(Workspace& ws) {
  const auto& ctx = ws.ctx();
  const std::size_t n = ctx.n();
  const unsigned bound = ws.options().degree_max;
  const unsigned s_max = ws.options().s_max;

  Json ranks = Json::array();
  Json digests = Json::array();
  for (unsigned s = 0; s <= s_max; ++s) {
    const SesTag tag = SesTag::defining(s);
    const auto& ses = ws.ses(tag);
    const auto& power = ws.tor(ses.middle_ptr());
    const auto& graded = ws.tor(ses.right_ptr());
    const auto& next = ws.tor(ses.left_ptr());
    const auto& projection = ws.projection_on_tor(tag);
    const auto& epsilon = ws.connecting(tag);
    digests.push_back(map_digest(epsilon));

    for (unsigned k = 0; k <= n; ++k) {
      std::size_t rank_power = 0;
      std::size_t rank_graded = 0;
      std::size_t rank_next = 0;
      for (unsigned d = 0; d <= bound; ++d) {
        auto fail = [&](const std::string& what) {
          return CheckReport::fail("0 -> Tor_k(I^s) -> Tor_k(I^s/I^{s+1}) -> Tor_{k-1}(I^{s+1}) -> 0 fails",
                                   cell_witness(s, k, d, what));
        };
        const auto& inv_power = power.invariants(k, d);
        const auto& inv_graded = graded.invariants(k, d);
        if (!inv_power.is_free()) return fail("Tor_k(I^s) has torsion " + inv_power.to_string());
        if (!inv_graded.is_free()) return fail("Tor_k(I^s/I^{s+1}) has torsion " + inv_graded.to_string());
        const ExactMatrix& p = projection.at(k, d);
        if (!linalg::presented_injective(p, power.relations(k, d), graded.relations(k, d))) {
          return fail("(p_s)_* is not injective");
        }
        std::size_t next_free = 0;
        if (k > 0) {
          const auto& inv_next = next.invariants(k - 1, d);
          if (!inv_next.is_free()) return fail("Tor_{k-1}(I^{s+1}) has torsion " + inv_next.to_string());
          next_free = inv_next.free_rank;
          if (!tor::exact_at(p, epsilon.at(k, d), graded.relations(k, d), next.relations(k - 1, d))) {
            return fail("not exact at Tor_k(I^s/I^{s+1})");
          }
          if (!linalg::presented_surjective(epsilon.at(k, d), next.relations(k - 1, d))) {
            return fail("epsilon^s is not surjective");
          }
          auto coker = linalg::cokernel_invariants(p.hstack(graded.relations(k, d)));
          if (!(coker == inv_next)) return fail("coker (p_s)_* is " + coker.to_string());
        } else if (!linalg::presented_surjective(p, graded.relations(0, d))) {
          return fail("(p_s)_* is not surjective in homological degree 0");
        }
        if (inv_power.free_rank + next_free != inv_graded.free_rank) return fail("rank identity fails");
        rank_power += inv_power.free_rank;
        rank_graded += inv_graded.free_rank;
        rank_next += next_free;
      }
      ranks.push_back(Json{{"s", s}, {"k", k}, {"tor_power", rank_power}, {"tor_graded", rank_graded},
                           {"tor_next_power", rank_next}});
    }
    // Tor_n(I^{s+1}) would have to be hit from Tor_{n+1} = 0.
    for (unsigned d = 0; d <= bound; ++d) {
      if (!next.invariants(static_cast<unsigned>(n), d).is_zero()) {
        return CheckReport::fail("Tor_n(I^{s+1}) is nonzero", cell_witness(s, static_cast<unsigned>(n) + 1, d,
                                                                            "nothing maps onto Tor_n(I^{s+1})"));
      }
    }
  }
  return CheckReport::pass("short exact with free terms for s <= " + std::to_string(s_max) +
                               " up to degree " + std::to_string(bound),
                           Json{{"connecting_sign", tor::kConnectingSign}, {"degree_bound", bound},
                                {"ranks", ranks}, {"epsilon_digests", digests}});
}

}  // namespace

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> out;
    for (const auto& c : kChecks) out.push_back(c.id);
    return out;
  }();
  return ids;
}

std::string to_string(CheckId id) { return info(id).name; }

std::optional<CheckId> parse_check_id(std::string_view name) {
  for (const auto& c : kChecks) {
    if (name == c.name) return c.id;
  }
  return std::nullopt;
}

std::string_view claim(CheckId id) { return info(id).claim; }

const std::vector<CheckId>& prerequisites(CheckId id) {
  static const std::vector<CheckId> none;
  static const std::vector<CheckId> regular{CheckId::kRegularity};
  static const std::vector<CheckId> singular{CheckId::kSingular};
  switch (id) {
    case CheckId::kCorTor:
    case CheckId::kPropGr:
    case CheckId::kDelta0:
    case CheckId::kPropSequence:
    case CheckId::kFactorization:
    case CheckId::kLongSequence:
    case CheckId::kTheorem1:
      return regular;
    case CheckId::kLeibniz:
      return singular;
    default:
      return none;
  }
}

bool is_variable_sequence(const RingContext& ctx) {
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    if (!(ctx.sequence()[i] == ctx.variable(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Workspace::Workspace(std::shared_ptr<const RingContext> ctx, RunOptions options)
    : ctx_(ctx), options_(options), modules_(std::move(ctx), options.degree_max, options.threads) {}

const tor::KoszulTensorComplex& Workspace::complex(const std::shared_ptr<const FiltrationModule>& m) {
  return tor_ptr(m)->complex();
}

const tor::TorModule& Workspace::tor(const std::shared_ptr<const FiltrationModule>& m) { return *tor_ptr(m); }

std::shared_ptr<const tor::TorModule> Workspace::tor_ptr(const std::shared_ptr<const FiltrationModule>& m) {
  auto it = tors_.find(m->label());
  if (it != tors_.end()) return it->second;
  auto complex = std::make_shared<const tor::KoszulTensorComplex>(m, options_.threads);
  complexes_.emplace(m->label(), complex);
  auto t = std::make_shared<const tor::TorModule>(complex, options_.threads);
  tors_.emplace(m->label(), t);
  return t;
}

const modules::ShortExactSequence& Workspace::ses(SesTag tag) {
  const std::string key = tag.label();
  auto it = sequences_.find(key);
  if (it != sequences_.end()) return it->second;
  return sequences_.emplace(key, modules::build_ses(modules_, tag)).first->second;
}

const tor::TorMap& Workspace::connecting(SesTag tag, linalg::PivotOrder order) {
  const std::string key = "connecting:" + tag.label() + ":" + order_name(order);
  auto it = maps_.find(key);
  if (it != maps_.end()) return it->second;
  const auto& sequence = ses(tag);
  tor::TorMap map = tor::connecting_hom(sequence, complex(sequence.middle_ptr()), tor(sequence.left_ptr()),
                                        tor(sequence.right_ptr()), order, options_.threads);
  return maps_.emplace(key, std::move(map)).first->second;
}

const tor::TorMap& Workspace::projection_on_tor(SesTag tag) {
  const std::string key = "projection:" + tag.label();
  auto it = maps_.find(key);
  if (it != maps_.end()) return it->second;
  const auto& sequence = ses(tag);
  tor::TorMap map = tor::induced_map(sequence.projection(), tor(sequence.middle_ptr()), tor(sequence.right_ptr()),
                                     options_.threads);
  return maps_.emplace(key, std::move(map)).first->second;
}

const tor::TorMap& Workspace::reduction_on_tor(unsigned s) {
  const std::string key = "reduction:" + std::to_string(s);
  auto it = maps_.find(key);
  if (it != maps_.end()) return it->second;
  auto source = modules_.power(s + 1);
  auto target = modules_.quotient(s + 1, s + 2);
  auto f = modules::ModuleMorphism::induced(source, target, {std::size_t{0}});
  tor::TorMap map = tor::induced_map(f, tor(source), tor(target), options_.threads);
  return maps_.emplace(key, std::move(map)).first->second;
}

CheckReport run_check(CheckId id, Workspace& ws) {
  try {
    switch (id) {
      case CheckId::kRegularity: return check_regularity(ws);
      case CheckId::kBialgebra: return check_bialgebra(ws);
      case CheckId::kKoszulResolution: return check_koszul_resolution(ws);
      case CheckId::kCorTor: return check_cor_tor(ws);
      case CheckId::kPropGr: return check_prop_gr(ws);
      case CheckId::kModelExact: return check_model_exact(ws);
      case CheckId::kModelColinear: return check_model_colinear(ws);
      case CheckId::kSingular: return check_singular(ws);
      case CheckId::kLeibniz: return check_leibniz(ws);
      case CheckId::kDelta0: return check_delta0(ws);
      case CheckId::kPropSequence: return check_prop_sequence(ws);
      case CheckId::kFactorization: return check_factorization(ws);
      case CheckId::kLongSequence: return check_long_sequence(ws);
      case CheckId::kTheorem1: return check_theorem1(ws);
    }
  } catch (const std::exception& e) {
    return CheckReport::fail(std::string("computation failed: ") + e.what());
  }
  throw std::invalid_argument("unknown check id");
}

// ---------------------------------------------------------------------------

bool Certificate::passed() const {
  for (const auto& c : checks) {
    if (!c.report.passed()) return false;
  }
  return true;
}

Json Certificate::to_json() const {
  Json out;
  out["instance"] = instance;
  Json list = Json::array();
  for (const auto& c : checks) {
    Json entry;
    entry["id"] = to_string(c.id);
    entry["status"] = to_string(c.report.status);
    entry["elapsed_ms"] = c.elapsed_ms ? Json(*c.elapsed_ms) : Json();
    entry["detail"] = c.report.detail;
    if (!c.report.witness.is_null()) entry["witness"] = c.report.witness;
    if (!c.report.payload.is_null()) entry["payload"] = c.report.payload;
    list.push_back(std::move(entry));
  }
  out["checks"] = std::move(list);
  out["overall"] = passed() ? "PASS" : "FAIL";
  return out;
}

std::string Certificate::to_text() const { return render_text(to_json()); }

std::string render_text(const Json& certificate) {
  std::ostringstream os;
  const Json& instance = certificate.at("instance");
  os << "instance: base " << instance.value("base", std::string("?")) << ", sequence (";
  const Json sequence = instance.value("sequence", Json::array());
  for (std::size_t i = 0; i < sequence.size(); ++i) os << (i ? ", " : "") << sequence[i].get<std::string>();
  os << "), s_max " << instance.value("s_max", 0u) << ", degree_max " << instance.value("degree_max", 0u)
     << ", seed " << instance.value("seed", std::uint64_t{0}) << "\n";
  for (const auto& c : certificate.at("checks")) {
    const std::string id = c.at("id");
    const std::string status = c.at("status");
    os << id << std::string(id.size() < 18 ? 18 - id.size() : 1, ' ') << status
       << std::string(status.size() < 8 ? 8 - status.size() : 1, ' ') << c.value("detail", std::string());
    if (c.contains("elapsed_ms") && c["elapsed_ms"].is_number()) {
      std::ostringstream t;
      t.imbue(std::locale::classic());
      t.setf(std::ios::fixed);
      t.precision(1);
      t << c["elapsed_ms"].get<double>();
      os << " (" << t.str() << " ms)";
    }
    os << "\n";
    if (c.contains("witness")) os << "  witness: " << c["witness"].dump() << "\n";
  }
  os << "overall: " << certificate.value("overall", std::string("FAIL")) << "\n";
  return os.str();
}

Json describe_instance(const RingContext& ctx, const RunOptions& options) {
  Json sequence = Json::array();
  for (const auto& r : ctx.sequence()) sequence.push_back(ctx.render(r));
  return Json{{"base", ctx.base().name()},       {"vars", ctx.variable_names()},
              {"weights", ctx.weights()},        {"sequence", sequence},
              {"s_max", options.s_max},          {"degree_max", options.degree_max},
              {"seed", options.seed}};
}

Certificate run_all(std::shared_ptr<const RingContext> ctx, const RunOptions& options,
                    const std::vector<CheckId>& selection) {
  Certificate cert;
  cert.instance = describe_instance(*ctx, options);
  Workspace ws(ctx, options);
  std::map<CheckId, CheckResult> done;

  std::function<const CheckResult&(CheckId)> evaluate = [&](CheckId id) -> const CheckResult& {
    if (auto it = done.find(id); it != done.end()) return it->second;
    for (CheckId pre : prerequisites(id)) {
      const CheckResult& r = evaluate(pre);
      if (!r.report.passed()) {
        CheckResult skipped{id, CheckReport::skipped("prerequisite " + to_string(pre) + " did not pass"),
                            std::nullopt};
        return done.emplace(id, std::move(skipped)).first->second;
      }
    }
    const auto start = std::chrono::steady_clock::now();
    CheckReport report = run_check(id, ws);
    std::optional<double> elapsed;
    if (options.timings) {
      elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return done.emplace(id, CheckResult{id, std::move(report), elapsed}).first->second;
  };

  const std::set<CheckId> selected(selection.begin(), selection.end());
  for (CheckId id : all_checks()) {
    if (selected.count(id)) cert.checks.push_back(evaluate(id));
  }
  return cert;
}

}  // namespace regtor::suite
