#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcycle/scalar.hpp"

namespace qcycle {

// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

// Skips zero entries of both factors; the maps here are mostly sparse.
inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail("DimensionMismatch", "matrix product");
  Matrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Scalar& x = a(i, k);
      if (is_zero(x)) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) r(i, j) += x * b(k, j);
    }
  return r;
}

inline Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) *= s;
  return r;
}

// A (x) B with index (r1, r2) -> r1 * B.rows() + r2.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i1 = 0; i1 < a.rows(); ++i1)
    for (int j1 = 0; j1 < a.cols(); ++j1) {
      if (is_zero(a(i1, j1))) continue;
      for (int i2 = 0; i2 < b.rows(); ++i2)
        for (int j2 = 0; j2 < b.cols(); ++j2)
          if (!is_zero(b(i2, j2))) r(i1 * b.rows() + i2, j1 * b.cols() + j2) = a(i1, j1) * b(i2, j2);
    }
  return r;
}

namespace detail {

// Rows scaled to integers: A = diag(1/scale) * B.
inline std::pair<std::vector<std::vector<mpz_class>>, std::vector<mpz_class>> integer_rows(const Matrix& a) {
  const int n = a.rows();
  std::vector<std::vector<mpz_class>> b(n, std::vector<mpz_class>(a.cols()));
  std::vector<mpz_class> scale(n, 1);
  for (int i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < a.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    scale[i] = l;
    for (int j = 0; j < a.cols(); ++j) b[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  return {std::move(b), std::move(scale)};
}

}  // namespace detail

// Bareiss elimination on the integer-scaled matrix.
inline Scalar determinant(const Matrix& a) {
  if (a.rows() != a.cols()) fail("DimensionMismatch", "determinant of a non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  auto [m, scale] = detail::integer_rows(a);
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Scalar det(m[n - 1][n - 1] * sign);
  for (const auto& s : scale) det /= s;
  return det;
}

// Fraction-free Gauss-Jordan on [B | I]; the left block ends as d * I and
// the right block as d * B^{-1}. Then A^{-1} = B^{-1} * diag(scale).
inline Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) fail("DimensionMismatch", "inverse of a non-square matrix");
  const int n = a.rows();
  auto [b, scale] = detail::integer_rows(a);
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = b[i][j];
    m[i][n + i] = 1;
  }
  mpz_class prev = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) fail("Singular", "matrix is not invertible");
    if (piv != k) std::swap(m[piv], m[k]);
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      for (int j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = Scalar(m[i][n + j] * scale[j], m[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j).canonicalize();
  return r;
}

}  // namespace qcycle
