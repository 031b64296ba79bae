#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hamtrio/error.hpp"
#include "hamtrio/symcore/rational_function.hpp"

namespace hamtrio::symcore {

// Small dense matrix. T is Rational, Polynomial or RationalFunction.
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r * cols_ + c)];
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  template <typename F>
  auto map(F f) const {
    Mat<decltype(f(a_[0]))> r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

template <typename T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b, const T& zero) {
  if (a.cols() != b.rows()) throw InternalError("matrix dimension mismatch");
  Mat<T> r(a.rows(), b.cols(), zero);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      for (int j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

// Determinant by cofactor expansion along the first row; fine for n <= 10.
template <typename T>
T det_cofactor(const Mat<T>& m, const T& zero) {
  int n = m.rows();
  if (n != m.cols()) throw InternalError("determinant of non-square matrix");
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T acc = zero;
  for (int j = 0; j < n; ++j) {
    Mat<T> minor(n - 1, n - 1, zero);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    T term = m(0, j) * det_cofactor(minor, zero);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

// Adjugate for n >= 2: adj(m) * m = det(m) * I. The 1x1 case (adj = [1])
// is handled by the typed overloads.
template <typename T>
Mat<T> adjugate(const Mat<T>& m, const T& zero) {
  int n = m.rows();
  if (n < 2) throw InternalError("generic adjugate requires n >= 2");
  Mat<T> adj(n, n, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Mat<T> minor(n - 1, n - 1, zero);
      int rr = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      T cof = det_cofactor(minor, zero);
      if ((i + j) % 2 != 0) cof = zero - cof;
      adj(j, i) = cof;  // transpose of cofactor matrix
    }
  }
  return adj;
}

// ---- operations specialized to the scalar types in use ----

inline Polynomial det(const Mat<Polynomial>& m) {
  if (m.rows() == 0) throw InternalError("determinant of empty matrix");
  return det_cofactor(m, Polynomial::zero(m(0, 0).table()));
}

inline Mat<Polynomial> adjugate(const Mat<Polynomial>& m) {
  auto t = m(0, 0).table();
  if (m.rows() == 1) {
    Mat<Polynomial> r(1, 1, Polynomial::one(t));
    return r;
  }
  return adjugate(m, Polynomial::zero(t));
}

inline RationalFunction det(const Mat<RationalFunction>& m) {
  if (m.rows() == 0) throw InternalError("determinant of empty matrix");
  return det_cofactor(m, RationalFunction::zero(m(0, 0).table()));
}

inline Rational det(const Mat<Rational>& m) { return det_cofactor(m, Rational(0)); }

// Rank of a matrix of exact rationals.
inline int rank(Mat<Rational> m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

// Symbolic inverse of a matrix over the rational-function field.
// Throws DegeneracyError carrying the determinant when det == 0.
inline Mat<RationalFunction> matrix_inverse(const Mat<RationalFunction>& m) {
  int n = m.rows();
  if (n != m.cols()) throw InternalError("inverse of non-square matrix");
  auto t = m(0, 0).table();
  // Common denominator: product of entry denominators reduced per row is
  // overkill here; entries are small. Work over the field directly.
  RationalFunction d = det(m);
  if (d.is_zero())
    throw DegeneracyError("matrix is symbolically degenerate", "0");
  if (n == 1) {
    Mat<RationalFunction> r(1, 1, RationalFunction::zero(t));
    r(0, 0) = RationalFunction::one(t) / m(0, 0);
    return r;
  }
  Mat<RationalFunction> adj = adjugate(m, RationalFunction::zero(t));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) adj(i, j) = adj(i, j) / d;
  return adj;
}

// det != 0 check without building normalized inverses.
inline Polynomial polynomial_matrix_det(const Mat<RationalFunction>& m,
                                        Polynomial* common_den = nullptr) {
  auto t = m(0, 0).table();
  Mat<Polynomial> num(m.rows(), m.cols(), Polynomial::zero(t));
  Polynomial dd = Polynomial::one(t);
  // Bring to a common denominator by multiplying rows.
  for (int i = 0; i < m.rows(); ++i) {
    Polynomial row_den = Polynomial::one(t);
    for (int j = 0; j < m.cols(); ++j) {
      const Polynomial& dj = m(i, j).den();
      Polynomial g = gcd(row_den, dj);
      row_den = row_den * divide_exact(dj, g);
    }
    for (int j = 0; j < m.cols(); ++j)
      num(i, j) = m(i, j).num() * divide_exact(row_den, m(i, j).den());
    dd = dd * row_den;
  }
  if (common_den) *common_den = dd;
  return det(num);
}

}  // namespace hamtrio::symcore
