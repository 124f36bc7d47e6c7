#include "regtor/tor/tor.hpp"

#include <stdexcept>

#include "regtor/common/parallel.hpp"

namespace regtor::tor {

namespace {

using linalg::BaseRing;

Vector unit(std::size_t size, std::size_t i) {
  Vector v(size);
  v[i] = 1;
  return v;
}

Vector slice(const Vector& v, std::size_t begin, std::size_t size) {
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(begin), v.begin() + static_cast<std::ptrdiff_t>(begin + size));
}

void add_into(const BaseRing& ring, Vector& out, std::size_t offset, const Vector& part, const Scalar& factor) {
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (sgn(part[i]) == 0) continue;
    out[offset + i] = ring.add(out[offset + i], ring.mul(factor, part[i]));
  }
}

void place(ExactMatrix& target, std::size_t row0, std::size_t col0, const ExactMatrix& block, const Scalar& factor) {
  for (std::size_t c = 0; c < block.cols(); ++c) {
    for (const auto& [r, x] : block.column(c)) target.set(row0 + r, col0 + c, x * factor);
  }
}

std::vector<std::pair<unsigned, unsigned>> all_cells(std::size_t n, unsigned bound) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned k = 0; k <= n; ++k) {
    for (unsigned d = 0; d <= bound; ++d) out.emplace_back(k, d);
  }
  return out;
}

Json class_json(unsigned k, unsigned d, std::size_t index) { return Json{{"k", k}, {"d", d}, {"index", index}}; }

}  // namespace

KoszulTensorComplex::KoszulTensorComplex(std::shared_ptr<const GradedModule> module, unsigned threads)
    : module_(std::move(module)), n_(module_->ctx().n()) {
  const auto& ctx = module_->ctx();
  const unsigned bound = degree_bound();
  cells_.assign(n_ + 1, std::vector<Cell>(bound + 1));
  for (unsigned k = 0; k <= n_; ++k) {
    for (unsigned d = 0; d <= bound; ++d) {
      Cell& c = cells_[k][d];
      for (IndexSet subset : exterior::subsets_of_size(n_, k)) {
        unsigned weight = 0;
        for (std::size_t j : subset.elements()) weight += ctx.seq_degree(j);
        if (weight > d) continue;
        const unsigned m = d - weight;
        c.blocks.push_back({subset, m, c.dimension, module_->generators(m)});
        c.dimension += module_->generators(m);
      }
    }
  }
  const auto cells = all_cells(n_, bound);
  const BaseRing& ring = ctx.base();
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto [k, d] = cells[i];
    Cell& c = cells_[k][d];
    std::vector<ExactMatrix> rel;
    for (const auto& b : c.blocks) rel.push_back(module_->relations(b.module_degree));
    c.relations = linalg::block_diagonal(ring, rel);
    if (k == 0) {
      c.differential = ExactMatrix(ring, 0, c.dimension);
      return;
    }
    c.differential = ExactMatrix(ring, cells_[k - 1][d].dimension, c.dimension);
    for (const auto& b : c.blocks) {
      for (std::size_t j : b.subset.elements()) {
        const KoszulBlock* target = find_block(d, b.subset.without(j));
        const Scalar sign = position(j, b.subset) % 2 == 0 ? 1 : -1;
        place(c.differential, target->offset, b.offset, module_->action(j, b.module_degree), sign);
      }
    }
  });
}

const KoszulBlock* KoszulTensorComplex::find_block(unsigned d, IndexSet subset) const {
  for (const auto& b : blocks(static_cast<unsigned>(subset.size()), d)) {
    if (b.subset == subset) return &b;
  }
  return nullptr;
}

ExactMatrix KoszulTensorComplex::chain_map(const ModuleMorphism& f, const KoszulTensorComplex& target, unsigned k,
                                           unsigned d) const {
  ExactMatrix out(module_->ctx().base(), target.dimension(k, d), dimension(k, d));
  const auto& source_blocks = blocks(k, d);
  const auto& target_blocks = target.blocks(k, d);
  if (source_blocks.size() != target_blocks.size()) throw std::invalid_argument("chain_map: complexes differ");
  for (std::size_t i = 0; i < source_blocks.size(); ++i) {
    place(out, target_blocks[i].offset, source_blocks[i].offset, f.matrix(source_blocks[i].module_degree), 1);
  }
  return out;
}

TorModule::TorModule(std::shared_ptr<const KoszulTensorComplex> complex, unsigned threads)
    : complex_(std::move(complex)) {
  const unsigned bound = degree_bound();
  const std::size_t n = this->n();
  groups_.assign(n + 1, std::vector<linalg::Subquotient>(bound + 1));
  const auto cells = all_cells(n, bound);
  const BaseRing& ring = complex_->module().ctx().base();
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto [k, d] = cells[i];
    const auto& c = *complex_;
    ExactMatrix d_in = k < n ? c.differential(k + 1, d) : ExactMatrix(ring, c.dimension(k, d), 0);
    ExactMatrix rel_out = k > 0 ? c.relations(k - 1, d) : ExactMatrix(ring, 0, 0);
    groups_[k][d] = linalg::presented_homology(d_in, c.differential(k, d), c.relations(k, d), rel_out);
  });
}

Vector TorModule::representative(unsigned k, unsigned d, const Vector& coordinates) const {
  return group(k, d).cycle_basis().apply(coordinates);
}

bool TorModule::is_free() const {
  for (const auto& row : groups_) {
    for (const auto& g : row) {
      if (!g.invariants().is_free()) return false;
    }
  }
  return true;
}

TorMap induced_map(const ModuleMorphism& f, const TorModule& source, const TorModule& target, unsigned threads) {
  TorMap out;
  const unsigned bound = std::min(source.degree_bound(), target.degree_bound());
  out.cells.assign(source.n() + 1, std::vector<ExactMatrix>(bound + 1));
  const auto cells = all_cells(source.n(), bound);
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto [k, d] = cells[i];
    ExactMatrix chain = source.complex().chain_map(f, target.complex(), k, d);
    ExactMatrix m(f.source().ctx().base(), target.generator_count(k, d), 0);
    const ExactMatrix& reps = source.group(k, d).cycle_basis();
    for (std::size_t g = 0; g < reps.cols(); ++g) {
      m.append_column(target.class_of(k, d, chain.apply(reps.column_vector(g))));
    }
    out.cells[k][d] = std::move(m);
  });
  return out;
}

TorMap connecting_hom(const modules::ShortExactSequence& ses, const KoszulTensorComplex& middle,
                      const TorModule& left, const TorModule& right, PivotOrder order, unsigned threads) {
  TorMap out;
  const unsigned bound = std::min({left.degree_bound(), right.degree_bound(), middle.degree_bound()});
  const std::size_t n = right.n();
  const BaseRing& ring = middle.module().ctx().base();
  const Scalar sign = ring.from_int(kConnectingSign);
  out.cells.assign(n + 1, std::vector<ExactMatrix>(bound + 1));
  const auto cells = all_cells(n, bound);
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto [k, d] = cells[i];
    if (k == 0) {
      out.cells[k][d] = ExactMatrix(ring, 0, right.generator_count(0, d));
      return;
    }
    const auto& rc = right.complex();
    const auto& lc = left.complex();
    linalg::ImageSolver lift(middle.chain_map(ses.projection(), rc, k, d).hstack(rc.relations(k, d)), order);
    linalg::ImageSolver pullback(lc.chain_map(ses.inclusion(), middle, k - 1, d).hstack(middle.relations(k - 1, d)),
                                 order);
    const ExactMatrix& cycles = right.group(k, d).cycle_basis();
    ExactMatrix m(ring, left.generator_count(k - 1, d), 0);
    for (std::size_t g = 0; g < cycles.cols(); ++g) {
      auto lifted = lift.solve(cycles.column_vector(g));
      if (!lifted) throw std::logic_error("connecting map: cycle does not lift through the projection");
      Vector boundary = middle.differential(k, d).apply(slice(*lifted, 0, middle.dimension(k, d)));
      auto pulled = pullback.solve(boundary);
      if (!pulled) throw std::logic_error("connecting map: boundary does not come from the kernel");
      Vector cls = left.class_of(k - 1, d, slice(*pulled, 0, lc.dimension(k - 1, d)));
      m.append_column(left.group(k - 1, d).reduce(linalg::scale(ring, sign, cls)));
    }
    out.cells[k][d] = std::move(m);
  });
  return out;
}

Vector chain_product(const modules::BilinearMap& mu, const KoszulTensorComplex& first,
                     const KoszulTensorComplex& second, const KoszulTensorComplex& target, unsigned k1, unsigned d1,
                     const Vector& x, unsigned k2, unsigned d2, const Vector& y) {
  const BaseRing& ring = target.module().ctx().base();
  Vector out(target.dimension(k1 + k2, d1 + d2));
  for (const auto& a : first.blocks(k1, d1)) {
    Vector xa = slice(x, a.offset, a.size);
    if (linalg::is_zero(xa)) continue;
    for (const auto& b : second.blocks(k2, d2)) {
      const int sign = exterior::merge_sign(a.subset, b.subset);
      if (sign == 0) continue;
      Vector yb = slice(y, b.offset, b.size);
      if (linalg::is_zero(yb)) continue;
      const KoszulBlock* t = target.find_block(d1 + d2, a.subset | b.subset);
      add_into(ring, out, t->offset, mu.apply(a.module_degree, b.module_degree, xa, yb), Scalar(sign));
    }
  }
  return out;
}

TorClass tor_product(const modules::BilinearMap& mu, const TorModule& first, const TorModule& second,
                     const TorModule& target, const TorClass& a, const TorClass& b) {
  const unsigned k = a.k + b.k;
  const unsigned d = a.d + b.d;
  if (k > target.n() || d > target.degree_bound()) throw std::out_of_range("tor_product: outside the computed range");
  Vector chain = chain_product(mu, first.complex(), second.complex(), target.complex(), a.k, a.d,
                               first.representative(a.k, a.d, a.coordinates), b.k, b.d,
                               second.representative(b.k, b.d, b.coordinates));
  auto coords = target.group(k, d).try_class_of(chain);
  if (!coords) throw std::logic_error("tor_product: product of cycles is not a cycle");
  return TorClass{k, d, *coords};
}

bool exact_at(const ExactMatrix& f, const ExactMatrix& g, const ExactMatrix& rel_mid, const ExactMatrix& rel_out) {
  return linalg::presented_homology(f, g, rel_mid, rel_out).invariants().is_zero();
}

CheckReport check_long_exact_sequence(const TorModule& left, const TorModule& middle, const TorModule& right,
                                      const TorMap& inclusion, const TorMap& projection, const TorMap& connecting) {
  const BaseRing& ring = left.complex().module().ctx().base();
  const std::size_t n = left.n();
  const unsigned bound = std::min({left.degree_bound(), middle.degree_bound(), right.degree_bound()});
  std::size_t nodes = 0;
  for (unsigned d = 0; d <= bound; ++d) {
    for (unsigned k = static_cast<unsigned>(n) + 1; k-- > 0;) {
      auto fail = [&](const std::string& node) {
        return CheckReport::fail("long exact sequence breaks at " + node,
                                 Json{{"node", node}, {"k", k}, {"d", d}});
      };
      ExactMatrix incoming = k < n ? connecting.at(k + 1, d)
                                   : ExactMatrix(ring, left.generator_count(k, d), 0);
      ExactMatrix rel_left_below = k > 0 ? left.relations(k - 1, d) : ExactMatrix(ring, 0, 0);
      if (!exact_at(incoming, inclusion.at(k, d), left.relations(k, d), middle.relations(k, d))) {
        return fail("Tor_k(A)");
      }
      if (!exact_at(inclusion.at(k, d), projection.at(k, d), middle.relations(k, d), right.relations(k, d))) {
        return fail("Tor_k(B)");
      }
      if (!exact_at(projection.at(k, d), connecting.at(k, d), right.relations(k, d), rel_left_below)) {
        return fail("Tor_k(C)");
      }
      nodes += 3;
    }
  }
  return CheckReport::pass("long exact sequence is exact", Json{{"nodes", nodes}, {"degree_bound", bound}});
}

CheckReport verify_leibniz(const modules::ShortExactSequence& ses, const TorModule& kernel,
                           const TorModule& quotient, const TorMap& connecting, unsigned bound, unsigned threads) {
  const auto& algebra = ses.algebra();
  if (!algebra || !algebra->quotient_product || !algebra->right_action || !algebra->left_action) {
    return CheckReport::skipped(ses.label() + " carries no kernel actions");
  }
  const BaseRing& ring = quotient.complex().module().ctx().base();
  const std::size_t n = quotient.n();
  bound = std::min({bound, quotient.degree_bound(), kernel.degree_bound()});

  auto boundary_of = [&](unsigned k, unsigned d, const Vector& coords) { return connecting.at(k, d).apply(coords); };

  struct Outcome {
    std::size_t pairs = 0;
    std::optional<Json> witness;
  };
  const auto cells = all_cells(n, bound);
  std::vector<Outcome> outcomes(cells.size());

  parallel_for(cells.size(), threads, [&](std::size_t ci) {
    const auto [p, d] = cells[ci];
    Outcome& out = outcomes[ci];
    for (std::size_t a = 0; a < quotient.generator_count(p, d) && !out.witness; ++a) {
      const TorClass alpha{p, d, unit(quotient.generator_count(p, d), a)};
      for (unsigned q = 0; p + q <= n && !out.witness; ++q) {
        for (unsigned e = 0; d + e <= bound && !out.witness; ++e) {
          for (std::size_t b = 0; b < quotient.generator_count(q, e); ++b) {
            ++out.pairs;
            if (p + q == 0) continue;
            const TorClass beta{q, e, unit(quotient.generator_count(q, e), b)};
            const unsigned k = p + q;
            const auto& target = kernel.group(k - 1, d + e);
            TorClass product = tor_product(*algebra->quotient_product, quotient, quotient, quotient, alpha, beta);
            Vector lhs = target.reduce(boundary_of(k, d + e, product.coordinates));
            Vector rhs(target.generator_count());
            if (p > 0) {
              TorClass da{p - 1, d, boundary_of(p, d, alpha.coordinates)};
              rhs = linalg::add(ring, rhs,
                                tor_product(*algebra->right_action, kernel, quotient, kernel, da, beta).coordinates);
            }
            if (q > 0) {
              TorClass db{q - 1, e, boundary_of(q, e, beta.coordinates)};
              Vector term = tor_product(*algebra->left_action, quotient, kernel, kernel, alpha, db).coordinates;
              rhs = linalg::add(ring, rhs, linalg::scale(ring, ring.from_int(p % 2 == 0 ? 1 : -1), term));
            }
            rhs = target.reduce(rhs);
            if (lhs != rhs) {
              out.witness = Json{{"alpha", class_json(p, d, a)},
                                 {"beta", class_json(q, e, b)},
                                 {"boundary_of_product", linalg::to_string(lhs)},
                                 {"leibniz_side", linalg::to_string(rhs)}};
              break;
            }
          }
        }
      }
    }
  });

  std::size_t pairs = 0;
  for (const auto& o : outcomes) {
    pairs += o.pairs;
    if (o.witness) {
      return CheckReport::fail("Leibniz rule fails on " + ses.label(), *o.witness,
                               Json{{"pairs_checked", pairs}, {"degree_bound", bound}});
    }
  }
  return CheckReport::pass(
      "Leibniz rule holds on " + ses.label(),
      Json{{"pairs_checked", pairs},
           {"degree_bound", bound},
           {"scope", "graded instance, coefficient algebra R/I, verified up to the degree bound"}});
}

}  // namespace regtor::tor
