#include "regtor/linalg/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace regtor::linalg {

namespace {

const Scalar& zero_scalar() {
  static const Scalar kZero(0);
  return kZero;
}

void require_same_ring(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.ring() != b.ring()) throw std::invalid_argument("matrices over different rings");
}

}  // namespace

ExactMatrix::ExactMatrix(BaseRing ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols) {}

ExactMatrix ExactMatrix::identity(BaseRing ring, std::size_t n) {
  ExactMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace(i, Scalar(1));
  return m;
}

ExactMatrix ExactMatrix::from_rows(BaseRing ring, std::size_t rows, std::size_t cols,
                                   std::initializer_list<long> row_major) {
  if (row_major.size() != rows * cols) throw std::invalid_argument("from_rows: size mismatch");
  ExactMatrix m(ring, rows, cols);
  std::size_t k = 0;
  for (long v : row_major) {
    m.set(k / cols, k % cols, ring.from_int(v));
    ++k;
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(BaseRing ring, std::size_t rows,
                                      const std::vector<Vector>& columns) {
  ExactMatrix m(ring, rows, 0);
  for (const auto& c : columns) m.append_column(c);
  return m;
}

const Scalar& ExactMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = cols_.at(c);
  auto it = col.find(r);
  return it == col.end() ? zero_scalar() : it->second;
}

void ExactMatrix::set(std::size_t r, std::size_t c, Scalar value) {
  if (r >= rows_) throw std::out_of_range("ExactMatrix::set row");
  auto& col = cols_.at(c);
  value = ring_.normalize(std::move(value));
  if (sgn(value) == 0) {
    col.erase(r);
  } else {
    col[r] = std::move(value);
  }
}

void ExactMatrix::add_to(std::size_t r, std::size_t c, const Scalar& value) {
  if (sgn(value) == 0) return;
  auto& col = cols_.at(c);
  auto it = col.find(r);
  if (it == col.end()) {
    set(r, c, value);
    return;
  }
  Scalar sum = ring_.add(it->second, ring_.normalize(value));
  if (sgn(sum) == 0) {
    col.erase(it);
  } else {
    it->second = std::move(sum);
  }
}

Vector ExactMatrix::column_vector(std::size_t c) const {
  Vector v(rows_);
  for (const auto& [r, x] : cols_.at(c)) v[r] = x;
  return v;
}

void ExactMatrix::set_column(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
  auto& col = cols_.at(c);
  col.clear();
  for (std::size_t r = 0; r < v.size(); ++r) {
    Scalar x = ring_.normalize(v[r]);
    if (sgn(x) != 0) col.emplace(r, std::move(x));
  }
}

void ExactMatrix::append_column(const Vector& v) {
  cols_.emplace_back();
  set_column(cols_.size() - 1, v);
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

bool ExactMatrix::is_zero() const {
  for (const auto& c : cols_) {
    if (!c.empty()) return false;
  }
  return true;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
  require_same_ring(*this, rhs);
  if (cols() != rhs.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  ExactMatrix out(ring_, rows_, rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    Column acc;
    for (const auto& [k, b] : rhs.cols_[c]) {
      for (const auto& [r, a] : cols_[k]) {
        auto [it, inserted] = acc.try_emplace(r, ring_.mul(a, b));
        if (!inserted) it->second = ring_.add(it->second, ring_.mul(a, b));
      }
    }
    for (auto it = acc.begin(); it != acc.end();) {
      if (sgn(it->second) == 0) {
        it = acc.erase(it);
      } else {
        ++it;
      }
    }
    out.cols_[c] = std::move(acc);
  }
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& rhs) const {
  require_same_ring(*this, rhs);
  if (rows_ != rhs.rows_ || cols() != rhs.cols()) throw std::invalid_argument("sum: shape mismatch");
  ExactMatrix out = *this;
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, x] : rhs.cols_[c]) out.add_to(r, c, x);
  }
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& rhs) const {
  return *this + rhs.scaled(ring_.neg(ring_.one()));
}

ExactMatrix ExactMatrix::scaled(const Scalar& factor) const {
  ExactMatrix out(ring_, rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, x] : cols_[c]) out.set(r, c, ring_.mul(x, factor));
  }
  return out;
}

Vector ExactMatrix::apply(const Vector& v) const {
  if (v.size() != cols()) throw std::invalid_argument("apply: length mismatch");
  Vector out(rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    if (sgn(v[c]) == 0) continue;
    for (const auto& [r, x] : cols_[c]) out[r] = ring_.add(out[r], ring_.mul(x, v[c]));
  }
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix out(ring_, cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, x] : cols_[c]) out.cols_[r].emplace(c, x);
  }
  return out;
}

ExactMatrix ExactMatrix::select_columns(const std::vector<std::size_t>& which) const {
  ExactMatrix out(ring_, rows_, which.size());
  for (std::size_t i = 0; i < which.size(); ++i) out.cols_[i] = cols_.at(which[i]);
  return out;
}

ExactMatrix ExactMatrix::select_rows(const std::vector<std::size_t>& which) const {
  std::map<std::size_t, std::vector<std::size_t>> targets;
  for (std::size_t i = 0; i < which.size(); ++i) targets[which[i]].push_back(i);
  ExactMatrix out(ring_, which.size(), cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, x] : cols_[c]) {
      auto it = targets.find(r);
      if (it == targets.end()) continue;
      for (std::size_t i : it->second) out.cols_[c].emplace(i, x);
    }
  }
  return out;
}

ExactMatrix ExactMatrix::row_range(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw std::out_of_range("row_range");
  ExactMatrix out(ring_, end - begin, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    for (auto it = cols_[c].lower_bound(begin); it != cols_[c].end() && it->first < end; ++it) {
      out.cols_[c].emplace(it->first - begin, it->second);
    }
  }
  return out;
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& rhs) const {
  require_same_ring(*this, rhs);
  if (rows_ != rhs.rows_) throw std::invalid_argument("hstack: row mismatch");
  ExactMatrix out = *this;
  out.cols_.insert(out.cols_.end(), rhs.cols_.begin(), rhs.cols_.end());
  return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& rhs) const {
  require_same_ring(*this, rhs);
  if (cols() != rhs.cols()) throw std::invalid_argument("vstack: column mismatch");
  ExactMatrix out(ring_, rows_ + rhs.rows_, cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    out.cols_[c] = cols_[c];
    for (const auto& [r, x] : rhs.cols_[c]) out.cols_[c].emplace(rows_ + r, x);
  }
  return out;
}

std::vector<Vector> ExactMatrix::to_dense_rows() const {
  std::vector<Vector> out(rows_, Vector(cols()));
  for (std::size_t c = 0; c < cols(); ++c) {
    for (const auto& [r, x] : cols_[c]) out[r][c] = x;
  }
  return out;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  auto dense = to_dense_rows();
  for (std::size_t r = 0; r < dense.size(); ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < dense[r].size(); ++c) os << (c ? " " : "") << dense[r][c].get_str();
  }
  os << "] (" << rows_ << "x" << cols() << ")";
  return os.str();
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

Vector zero_vector(const BaseRing&, std::size_t n) { return Vector(n); }

Vector unit_vector(const BaseRing&, std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

Vector add(const BaseRing& ring, const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector add: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], b[i]);
  return out;
}

Vector sub(const BaseRing& ring, const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sub: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.sub(a[i], b[i]);
  return out;
}

Vector scale(const BaseRing& ring, const Scalar& factor, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring.mul(factor, v[i]);
  return out;
}

Vector concat(const Vector& a, const Vector& b) {
  Vector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

ExactMatrix block_diagonal(const BaseRing& ring, const std::vector<ExactMatrix>& blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ExactMatrix out(ring, rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      for (const auto& [r, x] : b.column(c)) out.set(r0 + r, c0 + c, x);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

}  // namespace regtor::linalg
