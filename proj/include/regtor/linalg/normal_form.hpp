#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "regtor/linalg/matrix.hpp"

namespace regtor::linalg {

/// Smith normal form U * M * V = D with U, V invertible over the ring.
///
/// D is diagonal with d_1 | d_2 | ... ; over Z the d_i are nonnegative and
/// over a field they are 1 or 0. `U_inverse` is tracked alongside U so that
/// callers can change basis in the target without a separate inversion.
struct SmithForm {
  ExactMatrix U;
  ExactMatrix U_inverse;
  ExactMatrix D;
  ExactMatrix V;
  /// The diagonal of D, length min(rows, cols).
  std::vector<Scalar> diagonal;
  std::size_t rank = 0;
};

/// Pivot selection: the nonzero entry of minimal Euclidean size in the
/// remaining block, ties broken by lowest row and then lowest column.
SmithForm smith_normal_form(const ExactMatrix& m);

/// Order in which columns are offered as pivots during column reduction.
/// The reversed order yields a different (equally valid) particular solution
/// in `solve_in_image`, which is how lift-independence gets tested.
enum class PivotOrder { kNatural, kReversed };

/// Column echelon form: M * transform = form, transform unimodular.
///
/// The first `rank()` columns of `form` are nonzero with strictly increasing
/// pivot rows; entries left of each pivot are reduced modulo it (column
/// Hermite form over Z, reduced echelon form over a field). Remaining columns
/// are zero, so the matching columns of `transform` span the kernel.
struct ColumnEchelon {
  ExactMatrix form;
  ExactMatrix transform;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

/// With `with_transform` false the transform is left empty, which saves the
/// bookkeeping when only the form is needed.
ColumnEchelon column_echelon(const ExactMatrix& m, PivotOrder order = PivotOrder::kNatural,
                             bool with_transform = true);

/// Basis of ker(M) as a free module. Over Z this is the saturated kernel
/// lattice, returned in column Hermite form so the output is canonical.
ExactMatrix kernel_basis(const ExactMatrix& m);

/// Basis of the column span of M (over Z: of the lattice the columns generate),
/// in column Hermite form.
ExactMatrix image_basis(const ExactMatrix& m);

/// Rank of M over the fraction field.
std::size_t rank(const ExactMatrix& m);

/// Solves M x = b for many right-hand sides against one echelon form.
class ImageSolver {
 public:
  explicit ImageSolver(const ExactMatrix& m, PivotOrder order = PivotOrder::kNatural);

  /// x with M x = b, or nullopt if b is not in the image (over Z integral
  /// solvability is required).
  std::optional<Vector> solve(const Vector& b) const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  BaseRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  ColumnEchelon echelon_;
};

std::optional<Vector> solve_in_image(const ExactMatrix& m, const Vector& b,
                                     PivotOrder order = PivotOrder::kNatural);

}  // namespace regtor::linalg
