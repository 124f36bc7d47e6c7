#include "regtor/linalg/homology.hpp"

#include <numeric>
#include <stdexcept>

namespace regtor::linalg {

std::string ModuleInvariants::to_string() const {
  std::string s = "free " + std::to_string(free_rank) + ", torsion [";
  for (std::size_t i = 0; i < torsion.size(); ++i) s += (i ? ", " : "") + torsion[i].get_str();
  return s + "]";
}

ModuleInvariants cokernel_invariants(const ExactMatrix& m) {
  SmithForm snf = smith_normal_form(m);
  ModuleInvariants inv;
  inv.free_rank = m.rows() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i) {
    const mpz_class d = snf.diagonal[i].get_num();
    if (d != 1) inv.torsion.push_back(d);
  }
  return inv;
}

Subquotient::Subquotient(const ExactMatrix& cycle_lattice, const ExactMatrix& boundaries)
    : ring_(cycle_lattice.ring()), ambient_(cycle_lattice.rows()) {
  lattice_solver_.emplace(cycle_lattice);
  const std::size_t zcount = cycle_lattice.cols();

  ExactMatrix bz(ring_, zcount, 0);
  for (std::size_t c = 0; c < boundaries.cols(); ++c) {
    auto coords = lattice_solver_->solve(boundaries.column_vector(c));
    if (!coords) throw std::logic_error("subquotient: boundary is not a cycle");
    bz.append_column(*coords);
  }

  SmithForm snf = smith_normal_form(bz);
  first_kept_ = 0;
  while (first_kept_ < snf.rank && snf.diagonal[first_kept_] == 1) ++first_kept_;

  std::vector<std::size_t> kept(zcount - first_kept_);
  std::iota(kept.begin(), kept.end(), first_kept_);
  for (std::size_t i : kept) {
    mpz_class order = i < snf.rank ? mpz_class(snf.diagonal[i].get_num()) : mpz_class(0);
    if (order == 0) {
      ++invariants_.free_rank;
    } else {
      invariants_.torsion.push_back(order);
    }
    orders_.push_back(order);
  }
  generators_ = cycle_lattice * snf.U_inverse.select_columns(kept);
  to_new_basis_ = std::move(snf.U);
}

std::optional<Vector> Subquotient::try_class_of(const Vector& x) const {
  if (x.size() != ambient_) throw std::invalid_argument("class_of: vector has wrong length");
  if (!lattice_solver_) return Vector{};
  auto z = lattice_solver_->solve(x);
  if (!z) return std::nullopt;
  Vector full = to_new_basis_.apply(*z);
  Vector coords(full.begin() + static_cast<std::ptrdiff_t>(first_kept_), full.end());
  return reduce(std::move(coords));
}

Vector Subquotient::class_of(const Vector& x) const {
  auto c = try_class_of(x);
  if (!c) throw std::invalid_argument("class_of: input is not a cycle");
  return *c;
}

Vector Subquotient::reduce(Vector coords) const {
  for (std::size_t i = 0; i < orders_.size() && i < coords.size(); ++i) {
    if (orders_[i] == 0) continue;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), coords[i].get_num_mpz_t(), orders_[i].get_mpz_t());
    coords[i] = r;
  }
  return coords;
}

ExactMatrix Subquotient::relations() const {
  ExactMatrix rel(ring_, orders_.size(), 0);
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (orders_[i] == 0) continue;
    Vector col(orders_.size());
    col[i] = Scalar(orders_[i]);
    rel.append_column(col);
  }
  return rel;
}

Subquotient subquotient_homology(const ExactMatrix& d_in, const ExactMatrix& d_out) {
  if (d_out.cols() != d_in.rows()) throw std::invalid_argument("subquotient_homology: shape mismatch");
  if (!(d_out * d_in).is_zero()) throw std::logic_error("subquotient_homology: d_out * d_in != 0");
  return Subquotient(kernel_basis(d_out), d_in);
}

Subquotient presented_homology(const ExactMatrix& d_in, const ExactMatrix& d_out,
                               const ExactMatrix& rel_mid, const ExactMatrix& rel_out) {
  const std::size_t mid = d_out.cols();
  if (d_in.rows() != mid || rel_mid.rows() != mid || rel_out.rows() != d_out.rows()) {
    throw std::invalid_argument("presented_homology: shape mismatch");
  }
  ExactMatrix preimage = kernel_basis(d_out.hstack(rel_out)).row_range(0, mid);
  return Subquotient(image_basis(preimage), d_in.hstack(rel_mid));
}

std::optional<Vector> presented_kernel_witness(const ExactMatrix& f, const ExactMatrix& rel_source,
                                               const ExactMatrix& rel_target) {
  ExactMatrix preimage = kernel_basis(f.hstack(rel_target)).row_range(0, f.cols());
  ImageSolver source(rel_source);
  for (std::size_t c = 0; c < preimage.cols(); ++c) {
    Vector x = preimage.column_vector(c);
    if (!source.solve(x)) return x;
  }
  return std::nullopt;
}

bool presented_injective(const ExactMatrix& f, const ExactMatrix& rel_source,
                         const ExactMatrix& rel_target) {
  return !presented_kernel_witness(f, rel_source, rel_target).has_value();
}

bool spans_everything(const ExactMatrix& m) {
  ColumnEchelon e = column_echelon(m, PivotOrder::kNatural, false);
  if (e.rank() != m.rows()) return false;
  for (std::size_t t = 0; t < e.rank(); ++t) {
    if (e.form.at(e.pivot_rows[t], t) != 1) return false;
  }
  return true;
}

bool presented_surjective(const ExactMatrix& f, const ExactMatrix& rel_target) {
  return spans_everything(f.hstack(rel_target));
}

}  // namespace regtor::linalg
