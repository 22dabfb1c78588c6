#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tilecoh/polynomial.hpp"

namespace tilecoh {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const T& fill = T()) : r_(rows), c_(cols), a_(rows * cols, fill) {}
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.c_) throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
  friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

  Matrix transposed() const {
    Matrix t(c_, r_, a_.empty() ? T() : a_[0]);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(size_t i, size_t k) {
    if (i == k) return;
    for (size_t j = 0; j < c_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(size_t j, size_t k) {
    if (j == k) return;
    for (size_t i = 0; i < r_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

/// x * y with an explicit zero (needed for element types without a usable default).
template <class T>
Matrix<T> multiply(const Matrix<T>& x, const Matrix<T>& y, const T& zero) {
  if (x.cols() != y.rows()) throw std::invalid_argument("multiply: shape mismatch");
  Matrix<T> z(x.rows(), y.cols(), zero);
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t k = 0; k < x.cols(); ++k) {
      const T& a = x(i, k);
      if (a == zero) continue;
      for (size_t j = 0; j < y.cols(); ++j) z(i, j) += a * y(k, j);
    }
  return z;
}

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
IntMatrix operator+(const IntMatrix& x, const IntMatrix& y);
IntMatrix operator-(const IntMatrix& x, const IntMatrix& y);
IntMatrix identity_matrix(size_t n);
IntMatrix power(const IntMatrix& m, unsigned e);
std::vector<Integer> apply(const IntMatrix& m, const std::vector<Integer>& v);
bool is_zero(const IntMatrix& m);
std::string to_string(const IntMatrix& m);

/// U * M * V = D, U and V unimodular, D diagonal with d_1 | d_2 | ... (d_i >= 0).
struct SmithForm {
  IntMatrix D, U, V;
  /// Nonzero invariant factors in order.
  std::vector<Integer> invariant_factors() const;
  size_t rank() const { return invariant_factors().size(); }
};
SmithForm smith_normal_form(const IntMatrix& m);
/// Invariant factors only (faster: no transforms).
std::vector<Integer> smith_invariants(const IntMatrix& m);

/// Rank over Q.
size_t rank(const IntMatrix& m);
Integer determinant(const IntMatrix& m);
/// det(xI - M), computed modulo enough primes and lifted by CRT.
Poly charpoly(const IntMatrix& m);

/// Nonnegative square matrix with some power entrywise positive. Throws on a
/// negative entry.
bool is_primitive(const IntMatrix& m);

/// Gaussian elimination over a field. F needs ==, -, *, / and is_zero().
template <class F>
struct FieldReduction {
  Matrix<F> rref;
  std::vector<size_t> pivots;
};

template <class F>
FieldReduction<F> row_reduce(Matrix<F> a) {
  FieldReduction<F> out;
  size_t r = 0;
  for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    F inv = a(r, c).inverse();
    for (size_t j = c; j < a.cols(); ++j) a(r, j) = a(r, j) * inv;
    for (size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      F f = a(i, c);
      for (size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rref = std::move(a);
  return out;
}

template <class F>
size_t field_rank(const Matrix<F>& a) {
  return row_reduce(a).pivots.size();
}

/// Basis of the right kernel {v : a v = 0}; `zero`/`one` give the field's constants.
template <class F>
std::vector<std::vector<F>> right_kernel(const Matrix<F>& a, const F& zero, const F& one) {
  auto red = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t c : red.pivots) is_pivot[c] = true;
  std::vector<std::vector<F>> basis;
  for (size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(a.cols(), zero);
    v[f] = one;
    for (size_t k = 0; k < red.pivots.size(); ++k) v[red.pivots[k]] = -red.rref(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Rational wrapper so that Rational fits the field interface above.
struct QElem {
  Rational v;
  QElem() = default;
  QElem(const Rational& x) : v(x) {}  // NOLINT(google-explicit-constructor)
  bool is_zero() const { return v == 0; }
  QElem inverse() const { return QElem(1 / v); }
  QElem operator-() const { return QElem(-v); }
  QElem& operator-=(const QElem& o) {
    v -= o.v;
    return *this;
  }
  QElem& operator+=(const QElem& o) {
    v += o.v;
    return *this;
  }
  friend QElem operator*(const QElem& a, const QElem& b) { return QElem(a.v * b.v); }
  friend QElem operator+(const QElem& a, const QElem& b) { return QElem(a.v + b.v); }
  friend QElem operator-(const QElem& a, const QElem& b) { return QElem(a.v - b.v); }
  friend bool operator==(const QElem& a, const QElem& b) { return a.v == b.v; }
};

Matrix<QElem> to_rational(const IntMatrix& m);

}  // namespace tilecoh
