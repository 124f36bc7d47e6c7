#include "regtor/linalg/normal_form.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace regtor::linalg {

namespace {

using Dense = std::vector<Vector>;  // row-major unless stated otherwise

Dense identity_dense(std::size_t n) {
  Dense d(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

ExactMatrix from_dense_rows(const BaseRing& ring, const Dense& rows, std::size_t cols) {
  ExactMatrix m(ring, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(rows[r][c]) != 0) m.set(r, c, rows[r][c]);
    }
  }
  return m;
}

ExactMatrix from_dense_columns(const BaseRing& ring, std::size_t rows, const Dense& cols) {
  ExactMatrix m(ring, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      if (sgn(cols[c][r]) != 0) m.set(r, c, cols[c][r]);
    }
  }
  return m;
}

// Smith reduction state: A is transformed in place while U, U^{-1} and V record
// the row and column operations applied so far.
class SmithReducer {
 public:
  explicit SmithReducer(const ExactMatrix& m)
      : ring_(m.ring()),
        m_(m.rows()),
        n_(m.cols()),
        a_(m.to_dense_rows()),
        u_(identity_dense(m_)),
        u_inv_(identity_dense(m_)),
        v_(identity_dense(n_)) {}

  SmithForm run() {
    const std::size_t steps = std::min(m_, n_);
    std::size_t t = 0;
    for (; t < steps; ++t) {
      auto pivot = find_block_minimum(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      reduce_pivot(t);
      const Scalar unit = ring_.normalizing_unit(a_[t][t]);
      if (unit != 1) scale_row(t, unit);
    }
    SmithForm out;
    out.rank = t;
    out.U = from_dense_rows(ring_, u_, m_);
    out.U_inverse = from_dense_rows(ring_, u_inv_, m_);
    out.V = from_dense_rows(ring_, v_, n_);
    out.D = from_dense_rows(ring_, a_, n_);
    out.diagonal.resize(steps);
    for (std::size_t i = 0; i < steps; ++i) out.diagonal[i] = a_[i][i];
    return out;
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> find_block_minimum(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    mpz_class best_size;
    for (std::size_t i = t; i < m_; ++i) {
      for (std::size_t j = t; j < n_; ++j) {
        if (sgn(a_[i][j]) == 0) continue;
        mpz_class s = ring_.size(a_[i][j]);
        if (!best || s < best_size) {
          best = {i, j};
          best_size = s;
        }
      }
    }
    return best;
  }

  void reduce_pivot(std::size_t t) {
    while (true) {
      bool remainder = false;
      for (std::size_t i = t + 1; i < m_; ++i) {
        if (sgn(a_[i][t]) == 0) continue;
        row_subtract(i, t, ring_.euclid_quotient(a_[i][t], a_[t][t]));
        remainder = remainder || sgn(a_[i][t]) != 0;
      }
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (sgn(a_[t][j]) == 0) continue;
        col_subtract(j, t, ring_.euclid_quotient(a_[t][j], a_[t][t]));
        remainder = remainder || sgn(a_[t][j]) != 0;
      }
      if (remainder) {
        bring_smallest_line_entry(t);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < m_ && !fixed; ++i) {
        for (std::size_t j = t + 1; j < n_; ++j) {
          if (!ring_.divides(a_[t][t], a_[i][j])) {
            row_add(t, i);
            fixed = true;
            break;
          }
        }
      }
      if (!fixed) return;
    }
  }

  // After an elimination pass left remainders, the smallest entry in row t or
  // column t is strictly smaller than the pivot; move it to (t, t).
  void bring_smallest_line_entry(std::size_t t) {
    std::size_t best_i = t;
    std::size_t best_j = t;
    mpz_class best_size = ring_.size(a_[t][t]);
    for (std::size_t i = t + 1; i < m_; ++i) {
      if (sgn(a_[i][t]) != 0 && ring_.size(a_[i][t]) < best_size) {
        best_size = ring_.size(a_[i][t]);
        best_i = i;
        best_j = t;
      }
    }
    for (std::size_t j = t + 1; j < n_; ++j) {
      if (sgn(a_[t][j]) != 0 && ring_.size(a_[t][j]) < best_size) {
        best_size = ring_.size(a_[t][j]);
        best_i = t;
        best_j = j;
      }
    }
    swap_rows(t, best_i);
    swap_cols(t, best_j);
  }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    std::swap(a_[i], a_[k]);
    std::swap(u_[i], u_[k]);
    for (auto& row : u_inv_) std::swap(row[i], row[k]);
  }

  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (auto& row : a_) std::swap(row[j], row[k]);
    for (auto& row : v_) std::swap(row[j], row[k]);
  }

  // row_i -= q * row_t
  void row_subtract(std::size_t i, std::size_t t, const Scalar& q) {
    if (sgn(q) == 0) return;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(a_[t][j]) != 0) a_[i][j] = ring_.sub(a_[i][j], ring_.mul(q, a_[t][j]));
    }
    for (std::size_t j = 0; j < m_; ++j) {
      if (sgn(u_[t][j]) != 0) u_[i][j] = ring_.sub(u_[i][j], ring_.mul(q, u_[t][j]));
    }
    for (auto& row : u_inv_) {
      if (sgn(row[i]) != 0) row[t] = ring_.add(row[t], ring_.mul(q, row[i]));
    }
  }

  // row_t += row_i
  void row_add(std::size_t t, std::size_t i) {
    for (std::size_t j = 0; j < n_; ++j) a_[t][j] = ring_.add(a_[t][j], a_[i][j]);
    for (std::size_t j = 0; j < m_; ++j) u_[t][j] = ring_.add(u_[t][j], u_[i][j]);
    for (auto& row : u_inv_) row[i] = ring_.sub(row[i], row[t]);
  }

  void scale_row(std::size_t t, const Scalar& unit) {
    const Scalar inv = ring_.inverse(unit);
    for (auto& x : a_[t]) x = ring_.mul(x, unit);
    for (auto& x : u_[t]) x = ring_.mul(x, unit);
    for (auto& row : u_inv_) row[t] = ring_.mul(row[t], inv);
  }

  // col_j -= q * col_t
  void col_subtract(std::size_t j, std::size_t t, const Scalar& q) {
    if (sgn(q) == 0) return;
    for (auto& row : a_) {
      if (sgn(row[t]) != 0) row[j] = ring_.sub(row[j], ring_.mul(q, row[t]));
    }
    for (auto& row : v_) {
      if (sgn(row[t]) != 0) row[j] = ring_.sub(row[j], ring_.mul(q, row[t]));
    }
  }

  BaseRing ring_;
  std::size_t m_;
  std::size_t n_;
  Dense a_;
  Dense u_;
  Dense u_inv_;
  Dense v_;
};

}  // namespace

SmithForm smith_normal_form(const ExactMatrix& m) { return SmithReducer(m).run(); }

ColumnEchelon column_echelon(const ExactMatrix& m, PivotOrder order, bool with_transform) {
  const BaseRing& ring = m.ring();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);
  if (order == PivotOrder::kReversed) std::reverse(perm.begin(), perm.end());

  // Column-major working copies.
  Dense work(cols, Vector(rows));
  Dense trans(with_transform ? cols : 0, Vector(cols));
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& [r, x] : m.column(perm[j])) work[j][r] = x;
    if (with_transform) trans[j][j] = 1;
  }

  auto col_subtract = [&](std::size_t j, std::size_t p, const Scalar& q, std::size_t from_row) {
    if (sgn(q) == 0) return;
    for (std::size_t r = from_row; r < rows; ++r) {
      if (sgn(work[p][r]) != 0) work[j][r] = ring.sub(work[j][r], ring.mul(q, work[p][r]));
    }
    if (!with_transform) return;
    for (std::size_t r = 0; r < cols; ++r) {
      if (sgn(trans[p][r]) != 0) trans[j][r] = ring.sub(trans[j][r], ring.mul(q, trans[p][r]));
    }
  };

  std::vector<std::size_t> pivots;
  std::size_t pc = 0;
  for (std::size_t i = 0; i < rows && pc < cols; ++i) {
    while (true) {
      std::optional<std::size_t> best;
      mpz_class best_size;
      for (std::size_t j = pc; j < cols; ++j) {
        if (sgn(work[j][i]) == 0) continue;
        mpz_class s = ring.size(work[j][i]);
        if (!best || s < best_size) {
          best = j;
          best_size = s;
        }
      }
      if (!best) break;
      std::swap(work[pc], work[*best]);
      if (with_transform) std::swap(trans[pc], trans[*best]);
      bool clean = true;
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (sgn(work[j][i]) == 0) continue;
        col_subtract(j, pc, ring.euclid_quotient(work[j][i], work[pc][i]), i);
        clean = clean && sgn(work[j][i]) == 0;
      }
      if (!clean) continue;
      const Scalar unit = ring.normalizing_unit(work[pc][i]);
      if (unit != 1) {
        for (std::size_t r = i; r < rows; ++r) work[pc][r] = ring.mul(work[pc][r], unit);
        if (with_transform) {
          for (auto& x : trans[pc]) x = ring.mul(x, unit);
        }
      }
      for (std::size_t t = 0; t < pc; ++t) {
        if (sgn(work[t][i]) == 0) continue;
        col_subtract(t, pc, ring.euclid_quotient(work[t][i], work[pc][i]), i);
      }
      pivots.push_back(i);
      ++pc;
      break;
    }
  }

  ColumnEchelon out;
  out.form = from_dense_columns(ring, rows, work);
  if (with_transform) {
    // trans is expressed in permuted coordinates; undo the permutation on rows.
    Dense unpermuted(cols, Vector(cols));
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t r = 0; r < cols; ++r) unpermuted[j][perm[r]] = trans[j][r];
    }
    out.transform = from_dense_columns(ring, cols, unpermuted);
  }
  out.pivot_rows = std::move(pivots);
  return out;
}

ExactMatrix kernel_basis(const ExactMatrix& m) {
  ColumnEchelon e = column_echelon(m);
  std::vector<std::size_t> which;
  for (std::size_t j = e.rank(); j < m.cols(); ++j) which.push_back(j);
  ExactMatrix k = e.transform.select_columns(which);
  return image_basis(k);
}

ExactMatrix image_basis(const ExactMatrix& m) {
  ColumnEchelon e = column_echelon(m, PivotOrder::kNatural, false);
  std::vector<std::size_t> which(e.rank());
  std::iota(which.begin(), which.end(), 0);
  return e.form.select_columns(which);
}

std::size_t rank(const ExactMatrix& m) { return column_echelon(m, PivotOrder::kNatural, false).rank(); }

ImageSolver::ImageSolver(const ExactMatrix& m, PivotOrder order)
    : ring_(m.ring()), rows_(m.rows()), cols_(m.cols()), echelon_(column_echelon(m, order)) {}

std::optional<Vector> ImageSolver::solve(const Vector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve: right-hand side has wrong length");
  const auto& form = echelon_.form;
  const std::size_t r = echelon_.rank();
  Vector residual = b;
  Vector y(r);
  for (std::size_t t = 0; t < r; ++t) {
    const std::size_t p = echelon_.pivot_rows[t];
    const Scalar& piv = form.at(p, t);
    if (!ring_.divides(piv, residual[p])) return std::nullopt;
    y[t] = ring_.exact_quotient(residual[p], piv);
    if (sgn(y[t]) == 0) continue;
    for (const auto& [row, x] : form.column(t)) residual[row] = ring_.sub(residual[row], ring_.mul(y[t], x));
  }
  if (!is_zero(residual)) return std::nullopt;
  Vector x(cols_);
  for (std::size_t t = 0; t < r; ++t) {
    if (sgn(y[t]) == 0) continue;
    for (const auto& [row, v] : echelon_.transform.column(t)) x[row] = ring_.add(x[row], ring_.mul(y[t], v));
  }
  return x;
}

std::optional<Vector> solve_in_image(const ExactMatrix& m, const Vector& b, PivotOrder order) {
  return ImageSolver(m, order).solve(b);
}

}  // namespace regtor::linalg
