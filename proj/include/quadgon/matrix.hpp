#pragma once

// Dense exact linear algebra over a quadgon Field: rank, reduced row echelon
// form and kernel bases.  Plain Gauss-Jordan elimination; the field is exact
// so no pivoting strategy beyond "first nonzero" is needed.

#include <cstddef>
#include <utility>
#include <vector>

#include "quadgon/error.hpp"

namespace quadgon {

template <class Field>
class Matrix {
 public:
  using Element = typename Field::Element;

  Matrix() = default;
  Matrix(const Field& field, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(const Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Appends a row; the row length must equal cols() (or fixes cols() when the
  /// matrix has no columns yet).
  void append_row(const std::vector<Element>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw Error("matrix: row length mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  std::vector<Element> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  Matrix transposed(const Field& field) const {
    Matrix t(field, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// Reduced row echelon form; `pivots[k]` is the pivot column of row k.
template <class Field>
struct Echelon {
  Matrix<Field> reduced;
  std::vector<std::size_t> pivots;
};

template <class Field>
Echelon<Field> row_echelon(const Field& F, Matrix<Field> m) {
  using Element = typename Field::Element;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && F.is_zero(m(pivot, c))) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(r, pivot);
    const Element scale = F.inv(m(r, c));
    for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = F.mul(m(r, k), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || F.is_zero(m(i, c))) continue;
      const Element factor = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        m(i, k) = F.sub(m(i, k), F.mul(factor, m(r, k)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Exact rank.  Forward elimination only.
template <class Field>
std::size_t rank(const Field& F, Matrix<Field> m) {
  using Element = typename Field::Element;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && F.is_zero(m(pivot, c))) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(r, pivot);
    const Element scale = F.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (F.is_zero(m(i, c))) continue;
      const Element factor = F.mul(m(i, c), scale);
      for (std::size_t k = c; k < m.cols(); ++k)
        m(i, k) = F.sub(m(i, k), F.mul(factor, m(r, k)));
    }
    ++r;
  }
  return r;
}

/// Basis of {v : m v = 0}, one vector per free column (the free coordinate set
/// to 1).  Returns exactly cols - rank vectors; a matrix without rows yields
/// the standard basis.
template <class Field>
std::vector<std::vector<typename Field::Element>> kernel_basis(const Field& F,
                                                               const Matrix<Field>& m) {
  using Element = typename Field::Element;
  const auto ech = row_echelon(F, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : ech.pivots) is_pivot[c] = true;

  std::vector<std::vector<Element>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Element> v(m.cols(), F.zero());
    v[free] = F.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      v[ech.pivots[r]] = F.neg(ech.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class Field>
std::vector<typename Field::Element> multiply(const Field& F, const Matrix<Field>& m,
                                              const std::vector<typename Field::Element>& v) {
  if (v.size() != m.cols()) throw Error("matrix-vector size mismatch");
  std::vector<typename Field::Element> out(m.rows(), F.zero());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out[r] = F.add(out[r], F.mul(m(r, c), v[c]));
  return out;
}

template <class Field>
bool is_zero_vector(const Field& F, const std::vector<typename Field::Element>& v) {
  for (const auto& x : v)
    if (!F.is_zero(x)) return false;
  return true;
}

template <class Field>
typename Field::Element dot(const Field& F, const std::vector<typename Field::Element>& x,
                            const std::vector<typename Field::Element>& y) {
  if (x.size() != y.size()) throw Error("dot: size mismatch");
  auto s = F.zero();
  for (std::size_t i = 0; i < x.size(); ++i) s = F.add(s, F.mul(x[i], y[i]));
  return s;
}

}  // namespace quadgon
