#include "regtor/poly/ring_context.hpp"

#include <algorithm>
#include <stdexcept>

#include "regtor/linalg/homology.hpp"

namespace regtor::poly {

namespace {

void enumerate(const std::vector<unsigned>& weights, std::size_t i, unsigned remaining,
               std::vector<unsigned>& current, std::vector<Monomial>& out) {
  if (i + 1 == weights.size()) {
    if (remaining % weights[i] != 0) return;
    current[i] = remaining / weights[i];
    out.emplace_back(current);
    return;
  }
  for (unsigned e = remaining / weights[i] + 1; e-- > 0;) {
    current[i] = e;
    enumerate(weights, i + 1, remaining - e * weights[i], current, out);
  }
  current[i] = 0;
}

}  // namespace

RingContext::RingContext(BaseRing base, std::vector<std::string> names, std::vector<unsigned> weights,
                         std::vector<Polynomial> sequence)
    : base_(base), names_(std::move(names)), weights_(std::move(weights)), sequence_(std::move(sequence)) {
  if (names_.empty()) throw std::invalid_argument("ring needs at least one variable");
  if (weights_.size() != names_.size()) throw std::invalid_argument("one weight per variable is required");
  if (sequence_.size() != names_.size()) {
    throw std::invalid_argument("sequence length must equal the number of variables");
  }
  for (unsigned w : weights_) {
    if (w == 0) throw std::invalid_argument("variable weights must be positive");
  }
  for (std::size_t j = 0; j < sequence_.size(); ++j) {
    if (sequence_[j].nvars() != n() || sequence_[j].ring() != base_) {
      throw std::invalid_argument("sequence element " + std::to_string(j + 1) + " lives in a different ring");
    }
    auto d = homogeneous_degree(sequence_[j]);
    if (!d) {
      throw std::invalid_argument("sequence element " + std::to_string(j + 1) + " is zero or not homogeneous");
    }
    seq_degrees_.push_back(*d);
  }
}

unsigned RingContext::max_seq_degree() const {
  return *std::max_element(seq_degrees_.begin(), seq_degrees_.end());
}

unsigned RingContext::degree(const Monomial& m) const {
  unsigned d = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i) d += weights_.at(i) * m[i];
  return d;
}

std::optional<unsigned> RingContext::homogeneous_degree(const Polynomial& p) const {
  if (p.is_zero()) return std::nullopt;
  std::optional<unsigned> d;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = degree(m);
    if (d && *d != e) return std::nullopt;
    d = e;
  }
  return d;
}

const RingContext::Piece& RingContext::piece(unsigned d) const {
  std::lock_guard<std::mutex> lock(*cache_mutex_);
  auto it = cache_.find(d);
  if (it != cache_.end()) return it->second;
  Piece p;
  std::vector<unsigned> current(n(), 0);
  enumerate(weights_, 0, d, current, p.basis);
  for (std::size_t i = 0; i < p.basis.size(); ++i) p.index.emplace(p.basis[i], i);
  return cache_.emplace(d, std::move(p)).first->second;
}

const std::vector<Monomial>& RingContext::piece_basis(unsigned d) const { return piece(d).basis; }

std::size_t RingContext::index_of(const Monomial& m) const {
  const auto& idx = piece(degree(m)).index;
  return idx.at(m);
}

Vector RingContext::coordinates(const Polynomial& p, unsigned d) const {
  Vector v(piece_rank(d));
  const auto& idx = piece(d).index;
  for (const auto& [m, c] : p.terms()) {
    auto it = idx.find(m);
    if (it == idx.end()) throw std::invalid_argument("coordinates: term of the wrong degree");
    v[it->second] = c;
  }
  return v;
}

Polynomial RingContext::from_coordinates(const Vector& v, unsigned d) const {
  const auto& basis = piece_basis(d);
  if (v.size() != basis.size()) throw std::invalid_argument("from_coordinates: length mismatch");
  Polynomial p = zero();
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(basis[i], v[i]);
  return p;
}

std::vector<Monomial> graded_piece_basis(const RingContext& ctx, unsigned d) { return ctx.piece_basis(d); }

ExactMatrix mult_matrix(const RingContext& ctx, const Polynomial& f, unsigned d) {
  auto e = ctx.homogeneous_degree(f);
  if (!e) throw std::invalid_argument("mult_matrix: multiplier must be nonzero and homogeneous");
  const auto& source = ctx.piece_basis(d);
  ExactMatrix m(ctx.base(), ctx.piece_rank(d + *e), source.size());
  for (std::size_t c = 0; c < source.size(); ++c) {
    for (const auto& [t, coeff] : f.terms()) m.add_to(ctx.index_of(source[c] * t), c, coeff);
  }
  return m;
}

CheckReport check_regular_sequence(const RingContext& ctx, unsigned degree_bound) {
  const BaseRing& base = ctx.base();
  // Generators of (r_1..r_j)_d inside R_d.
  auto ideal_piece = [&](std::size_t j, unsigned d) {
    ExactMatrix gens(base, ctx.piece_rank(d), 0);
    for (std::size_t i = 0; i < j; ++i) {
      if (ctx.seq_degree(i) > d) continue;
      gens = gens.hstack(mult_matrix(ctx, ctx.sequence()[i], d - ctx.seq_degree(i)));
    }
    return gens;
  };

  if (linalg::spans_everything(ideal_piece(ctx.n(), 0))) {
    return CheckReport::fail("the sequence generates the unit ideal",
                             Json{{"j", ctx.n()}, {"degree", 0}, {"reason", "I = R"}});
  }
  std::size_t cells = 0;
  for (std::size_t j = 0; j < ctx.n(); ++j) {
    const unsigned e = ctx.seq_degree(j);
    for (unsigned d = 0; d + e <= degree_bound; ++d) {
      ++cells;
      ExactMatrix f = mult_matrix(ctx, ctx.sequence()[j], d);
      auto witness = linalg::presented_kernel_witness(f, ideal_piece(j, d), ideal_piece(j, d + e));
      if (!witness) continue;
      Json kernel = Json::array();
      for (const auto& x : *witness) kernel.push_back(x.get_str());
      return CheckReport::fail(
          "r_" + std::to_string(j + 1) + " is a zero divisor modulo the earlier elements in degree " +
              std::to_string(d),
          Json{{"j", j + 1}, {"degree", d}, {"kernel_vector", kernel},
               {"element", ctx.render(ctx.from_coordinates(*witness, d))}});
    }
  }
  return CheckReport::pass("regular up to internal degree " + std::to_string(degree_bound),
                           Json{{"degree_bound", degree_bound}, {"cells", cells}});
}

}  // namespace regtor::poly
