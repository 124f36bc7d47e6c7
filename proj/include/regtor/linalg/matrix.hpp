#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "regtor/linalg/base_ring.hpp"

namespace regtor::linalg {

/// Dense column vector of ring elements.
using Vector = std::vector<Scalar>;

/// Sparse matrix over a BaseRing, stored column by column.
///
/// Only nonzero entries are stored; `set` with a zero value erases. All
/// entries are kept normalized for the ring, so two matrices are equal iff
/// their stored entries coincide.
class ExactMatrix {
 public:
  using Column = std::map<std::size_t, Scalar>;

  ExactMatrix() : ring_(BaseRing::integers()) {}
  ExactMatrix(BaseRing ring, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(BaseRing ring, std::size_t n);
  static ExactMatrix from_rows(BaseRing ring, std::size_t rows, std::size_t cols,
                               std::initializer_list<long> row_major);
  static ExactMatrix from_columns(BaseRing ring, std::size_t rows,
                                  const std::vector<Vector>& columns);

  const BaseRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  bool empty() const { return rows_ == 0 || cols_.empty(); }

  const Scalar& at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Scalar value);
  void add_to(std::size_t r, std::size_t c, const Scalar& value);

  const Column& column(std::size_t c) const { return cols_.at(c); }
  Vector column_vector(std::size_t c) const;
  void set_column(std::size_t c, const Vector& v);
  void append_column(const Vector& v);

  std::size_t nonzeros() const;
  bool is_zero() const;

  ExactMatrix operator*(const ExactMatrix& rhs) const;
  ExactMatrix operator+(const ExactMatrix& rhs) const;
  ExactMatrix operator-(const ExactMatrix& rhs) const;
  ExactMatrix scaled(const Scalar& factor) const;
  Vector apply(const Vector& v) const;

  ExactMatrix transpose() const;
  ExactMatrix select_columns(const std::vector<std::size_t>& which) const;
  ExactMatrix select_rows(const std::vector<std::size_t>& which) const;
  /// Rows [begin, end) of this matrix.
  ExactMatrix row_range(std::size_t begin, std::size_t end) const;
  /// [this | rhs]
  ExactMatrix hstack(const ExactMatrix& rhs) const;
  /// [this ; rhs]
  ExactMatrix vstack(const ExactMatrix& rhs) const;

  std::vector<Vector> to_dense_rows() const;
  std::string to_string() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

 private:
  BaseRing ring_;
  std::size_t rows_ = 0;
  std::vector<Column> cols_;
};

Vector zero_vector(const BaseRing& ring, std::size_t n);
Vector unit_vector(const BaseRing& ring, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector add(const BaseRing& ring, const Vector& a, const Vector& b);
Vector sub(const BaseRing& ring, const Vector& a, const Vector& b);
Vector scale(const BaseRing& ring, const Scalar& factor, const Vector& v);
Vector concat(const Vector& a, const Vector& b);
std::string to_string(const Vector& v);

/// Block-diagonal matrix with the given blocks in order.
ExactMatrix block_diagonal(const BaseRing& ring, const std::vector<ExactMatrix>& blocks);

}  // namespace regtor::linalg
