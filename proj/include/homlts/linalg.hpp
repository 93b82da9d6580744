#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homlts/errors.hpp"
#include "homlts/field.hpp"

namespace homlts {

template <FieldScalar K>
using Vector = std::vector<K>;

/// Dense row-major matrix over an exact field.
///
/// Matrices act on column vectors: column j holds the image of basis vector e_j.
template <FieldScalar K>
class Matrix {
 public:
  Matrix() = default;

  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, K::from_int(field, 0)) {}

  static Matrix identity(const FieldSpec& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K::from_int(field, 1);
    return m;
  }

  static Matrix diagonal(const FieldSpec& field, const Vector<K>& diag) {
    Matrix m(field, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  /// Builds a matrix whose rows are the given vectors.
  static Matrix from_rows(const FieldSpec& field, const std::vector<Vector<K>>& rows, std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw dimension_error("from_rows: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  /// Builds a matrix whose columns are the given vectors.
  static Matrix from_columns(const FieldSpec& field, const std::vector<Vector<K>>& cols, std::size_t rows) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw dimension_error("from_columns: ragged columns");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<K> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const K> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<K> column(std::size_t j) const {
    Vector<K> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const K& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const K& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const K& s) { return a *= s; }
  friend Matrix operator*(const K& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw dimension_error("matrix product: " + a.shape() + " * " + b.shape());
    if (a.field_ != b.field_) throw field_mismatch();
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j).add_product(aik, b(k, j));
      }
    return c;
  }

  friend Vector<K> operator*(const Matrix& a, const Vector<K>& v) {
    if (a.cols_ != v.size())
      throw dimension_error("matrix-vector product: " + a.shape() + " * vector of length " +
                            std::to_string(v.size()));
    Vector<K> out(a.rows_, K::from_int(a.field_, 0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!v[k].is_zero()) out[i].add_product(a(i, k), v[k]);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix pow(std::size_t e) const {
    if (!square()) throw dimension_error("pow of non-square matrix " + shape());
    Matrix result = identity(field_, rows_);
    for (std::size_t i = 0; i < e; ++i) result = result * (*this);
    return result;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  const std::vector<K>& data() const { return data_; }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw dimension_error(std::string("matrix ") + op + ": " + shape() + " vs " + o.shape());
  }

  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

template <FieldScalar K>
Vector<K> zero_vector(const FieldSpec& field, std::size_t n) {
  return Vector<K>(n, K::from_int(field, 0));
}

template <FieldScalar K>
Vector<K> unit_vector(const FieldSpec& field, std::size_t n, std::size_t i) {
  auto v = zero_vector<K>(field, n);
  v.at(i) = K::from_int(field, 1);
  return v;
}

template <FieldScalar K>
bool is_zero(std::span<const K> v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

template <FieldScalar K>
bool is_zero(const Vector<K>& v) {
  return is_zero(std::span<const K>(v));
}

/// y += s * x
template <FieldScalar K>
void axpy(std::span<K> y, const K& s, std::span<const K> x) {
  if (y.size() != x.size()) throw dimension_error("axpy: length mismatch");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i].add_product(s, x[i]);
}

template <FieldScalar K>
struct RrefResult {
  Matrix<K> reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination. The first nonzero
/// row at or below the current position is taken as pivot row; the result is
/// the unique RREF of the input regardless of that choice.
template <FieldScalar K>
RrefResult<K> rref(Matrix<K> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const K inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!m(r, j).is_zero()) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const K factor = -m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j).add_product(factor, m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

template <FieldScalar K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank;
}

/// Basis of the right null space. One vector per free column, in increasing
/// column order; each carries a 1 in its own free slot and zeros in the others.
template <FieldScalar K>
std::vector<Vector<K>> kernel_basis(const Matrix<K>& m) {
  const auto r = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector<K>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    auto v = unit_vector<K>(m.field(), cols, f);
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Particular solution of M x = b with every free variable set to zero, or
/// nullopt when the system is inconsistent.
template <FieldScalar K>
std::optional<Vector<K>> solve(const Matrix<K>& m, const Vector<K>& b) {
  if (b.size() != m.rows())
    throw dimension_error("solve: matrix " + m.shape() + " with right-hand side of length " +
                          std::to_string(b.size()));
  Matrix<K> aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto r = rref(std::move(aug));
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  auto x = zero_vector<K>(m.field(), m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

/// Coordinates c with sum c_i B_i = v, or nullopt when v is outside the span.
/// When B is dependent the coordinates follow solve()'s tie-break.
template <FieldScalar K>
std::optional<Vector<K>> in_span(const FieldSpec& field, const Vector<K>& v, const std::vector<Vector<K>>& basis) {
  for (const auto& b : basis)
    if (b.size() != v.size()) throw dimension_error("in_span: vectors of different length");
  if (basis.empty()) {
    if (is_zero(v)) return Vector<K>{};
    return std::nullopt;
  }
  return solve(Matrix<K>::from_columns(field, basis, v.size()), v);
}

/// Canonical basis of span(vectors): the nonzero rows of the RREF of the
/// matrix whose rows are the vectors. Equal subspaces give equal bases.
template <FieldScalar K>
std::vector<Vector<K>> canonical_basis(const FieldSpec& field, const std::vector<Vector<K>>& vectors,
                                       std::size_t length) {
  if (vectors.empty()) return {};
  const auto r = rref(Matrix<K>::from_rows(field, vectors, length));
  std::vector<Vector<K>> out;
  out.reserve(r.rank);
  for (std::size_t i = 0; i < r.rank; ++i) {
    const auto row = r.reduced.row(i);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

template <FieldScalar K>
std::size_t span_dim(const FieldSpec& field, const std::vector<Vector<K>>& vectors, std::size_t length) {
  if (vectors.empty()) return 0;
  return rank(Matrix<K>::from_rows(field, vectors, length));
}

/// dim span(U) - dim span(W), after checking that W lies inside U.
template <FieldScalar K>
std::size_t quotient_dim(const FieldSpec& field, const std::vector<Vector<K>>& u, const std::vector<Vector<K>>& w,
                         std::size_t length) {
  for (const auto& x : w)
    if (!in_span(field, x, u)) throw precondition_error("quotient_dim: not a subspace");
  return span_dim(field, u, length) - span_dim(field, w, length);
}

/// Extends `base` by greedily appending those `candidates` that increase the
/// span, in order. Returns the indices of the appended candidates.
template <FieldScalar K>
std::vector<std::size_t> complete_basis(const FieldSpec& field, const std::vector<Vector<K>>& base,
                                        const std::vector<Vector<K>>& candidates, std::size_t length) {
  std::vector<Vector<K>> current = base;
  std::size_t r = span_dim(field, current, length);
  std::vector<std::size_t> added;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    current.push_back(candidates[i]);
    const std::size_t next = span_dim(field, current, length);
    if (next > r) {
      r = next;
      added.push_back(i);
    } else {
      current.pop_back();
    }
  }
  return added;
}

template <FieldScalar K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (!m.square()) throw dimension_error("inverse of non-square matrix " + m.shape());
  const std::size_t n = m.rows();
  Matrix<K> aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = K::from_int(m.field(), 1);
  }
  const auto r = rref(std::move(aug));
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<K> inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

}  // namespace homlts
