#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qcycle/scalar.hpp"

namespace qcycle {

namespace detail {
inline int checked_order(int order) {
  if (order < 1) fail("InvalidOrder", "truncation order must be positive, got " + std::to_string(order));
  return order;
}
}  // namespace detail

// Truncated power series in one variable: coefficients of x^0..x^{N-1}.
class Series1 {
 public:
  Series1() : Series1(1) {}
  explicit Series1(int order) : c_(detail::checked_order(order)) {}
  Series1(int order, const std::vector<Scalar>& coeffs) : Series1(order) {
    for (int i = 0; i < order && i < static_cast<int>(coeffs.size()); ++i) c_[i] = coeffs[i];
  }

  static Series1 constant(int order, const Scalar& a) {
    Series1 s(order);
    s.c_[0] = a;
    return s;
  }
  // Zero when the degree is not retained.
  static Series1 monomial(int order, int degree, const Scalar& a = 1) {
    Series1 s(order);
    if (degree >= 0 && degree < order) s.c_[degree] = a;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int i) const { return c_[i]; }
  Scalar& operator[](int i) { return c_[i]; }
  const Scalar& coefficient(int i) const {
    if (i < 0 || i >= order())
      fail("IndexOutOfTruncation", "x-degree " + std::to_string(i) + " >= " + std::to_string(order()));
    return c_[i];
  }
  const std::vector<Scalar>& coeffs() const { return c_; }

  // Index of the lowest nonzero coefficient; order() for the zero series.
  int valuation() const {
    for (int i = 0; i < order(); ++i)
      if (!qcycle::is_zero(c_[i])) return i;
    return order();
  }
  bool is_zero() const { return valuation() == order(); }

  Series1 truncate(int order) const { return Series1(std::min(order, this->order()), c_); }

  bool operator==(const Series1& o) const { return c_ == o.c_; }
  bool operator!=(const Series1& o) const { return !(*this == o); }

 private:
  std::vector<Scalar> c_;
};

// Truncated power series in x and y: coefficients (u, v) with u, v < N.
class Series2 {
 public:
  Series2() : Series2(1) {}
  explicit Series2(int order) : n_(detail::checked_order(order)), c_(static_cast<std::size_t>(n_) * n_) {}

  static Series2 from_x(const Series1& a) {
    Series2 s(a.order());
    for (int u = 0; u < a.order(); ++u) s(u, 0) = a[u];
    return s;
  }
  static Series2 from_y(const Series1& b) { return from_x(b).transpose(); }
  static Series2 monomial(int order, int u, int v, const Scalar& a = 1) {
    Series2 s(order);
    if (u >= 0 && v >= 0 && u < order && v < order) s(u, v) = a;
    return s;
  }

  int order() const { return n_; }
  const Scalar& operator()(int u, int v) const { return c_[static_cast<std::size_t>(u) * n_ + v]; }
  Scalar& operator()(int u, int v) { return c_[static_cast<std::size_t>(u) * n_ + v]; }
  const Scalar& coefficient(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      fail("IndexOutOfTruncation",
           "(" + std::to_string(u) + "," + std::to_string(v) + ") outside order " + std::to_string(n_));
    return (*this)(u, v);
  }

  // Coefficient of y^v as a series in x.
  Series1 slice_y(int v) const {
    if (v < 0 || v >= n_) fail("IndexOutOfTruncation", "y-degree " + std::to_string(v));
    Series1 s(n_);
    for (int u = 0; u < n_; ++u) s[u] = (*this)(u, v);
    return s;
  }
  // Coefficient of x^u as a series in y.
  Series1 slice_x(int u) const {
    if (u < 0 || u >= n_) fail("IndexOutOfTruncation", "x-degree " + std::to_string(u));
    Series1 s(n_);
    for (int v = 0; v < n_; ++v) s[v] = (*this)(u, v);
    return s;
  }
  void set_slice_y(int v, const Series1& s) {
    for (int u = 0; u < n_; ++u) (*this)(u, v) = u < s.order() ? s[u] : Scalar(0);
  }

  Series2 transpose() const {
    Series2 t(n_);
    for (int u = 0; u < n_; ++u)
      for (int v = 0; v < n_; ++v) t(v, u) = (*this)(u, v);
    return t;
  }
  Series2 truncate(int order) const {
    Series2 t(std::min(order, n_));
    for (int u = 0; u < t.n_; ++u)
      for (int v = 0; v < t.n_; ++v) t(u, v) = (*this)(u, v);
    return t;
  }

  bool divisible_by_x() const {
    for (int v = 0; v < n_; ++v)
      if (!qcycle::is_zero((*this)(0, v))) return false;
    return true;
  }
  bool divisible_by_y() const { return transpose().divisible_by_x(); }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& a) { return qcycle::is_zero(a); });
  }

  bool operator==(const Series2& o) const { return n_ == o.n_ && c_ == o.c_; }
  bool operator!=(const Series2& o) const { return !(*this == o); }

 private:
  int n_;
  std::vector<Scalar> c_;
};

// ---- one variable ----

inline Series1 add(const Series1& a, const Series1& b) {
  Series1 r(std::min(a.order(), b.order()));
  for (int i = 0; i < r.order(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Series1 sub(const Series1& a, const Series1& b) {
  Series1 r(std::min(a.order(), b.order()));
  for (int i = 0; i < r.order(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Series1 scale(const Series1& a, const Scalar& s) {
  Series1 r(a.order());
  for (int i = 0; i < r.order(); ++i) r[i] = a[i] * s;
  return r;
}
inline Series1 mul(const Series1& a, const Series1& b) {
  Series1 r(std::min(a.order(), b.order()));
  const int n = r.order();
  for (int i = 0; i < n; ++i) {
    if (is_zero(a[i])) continue;
    for (int j = 0; i + j < n; ++j)
      if (!is_zero(b[j])) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline Series1 operator+(const Series1& a, const Series1& b) { return add(a, b); }
inline Series1 operator-(const Series1& a, const Series1& b) { return sub(a, b); }
inline Series1 operator-(const Series1& a) { return scale(a, -1); }
inline Series1 operator*(const Series1& a, const Series1& b) { return mul(a, b); }
inline Series1 operator*(const Scalar& s, const Series1& a) { return scale(a, s); }
inline Series1 operator+(const Series1& a, const Scalar& s) { return a + Series1::constant(a.order(), s); }
inline Series1 operator-(const Series1& a, const Scalar& s) { return a - Series1::constant(a.order(), s); }

// Same order; the top coefficient is unknown after differentiation and stored as 0.
inline Series1 derivative(const Series1& a) {
  Series1 r(a.order());
  for (int i = 1; i < a.order(); ++i) r[i - 1] = a[i] * i;
  return r;
}

inline Series1 pow(const Series1& a, int k) {
  Series1 r = Series1::constant(a.order(), 1);
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

// a^0 .. a^kmax.
inline std::vector<Series1> powers(const Series1& a, int kmax) {
  std::vector<Series1> out{Series1::constant(a.order(), 1)};
  for (int k = 1; k <= kmax; ++k) out.push_back(out.back() * a);
  return out;
}

inline Series1 mul_inverse(const Series1& a) {
  if (is_zero(a[0])) fail("ZeroConstantTerm", "series is not invertible");
  const int n = a.order();
  Series1 b(n);
  const Scalar inv0 = Scalar(1) / a[0];
  b[0] = inv0;
  for (int k = 1; k < n; ++k) {
    Scalar s = 0;
    for (int i = 1; i <= k; ++i)
      if (!is_zero(a[i])) s += a[i] * b[k - i];
    b[k] = -s * inv0;
  }
  return b;
}

// a / b where x^r (r = valuation of b) divides a. The quotient is known to
// order N - r, which is the order of the result.
inline Series1 divide_exact(const Series1& a, const Series1& b) {
  const int n = std::min(a.order(), b.order());
  const int r = b.valuation();
  if (r >= n) fail("DivisionByZero", "divisor vanishes to the truncation order");
  if (a.valuation() < r) fail("NotDivisible", "dividend has lower order than divisor");
  Series1 as(n - r), bs(n - r);
  for (int i = 0; i < n - r; ++i) {
    as[i] = a[i + r];
    bs[i] = b[i + r];
  }
  return as * mul_inverse(bs);
}

// h(s) for s(0) = 0.
inline Series1 compose(const Series1& h, const Series1& s) {
  if (!is_zero(s[0])) fail("NonzeroConstantTerm", "inner series must vanish at 0");
  const int n = std::min(h.order(), s.order());
  Series1 r = Series1::constant(n, h[0]);
  Series1 p = Series1::constant(n, 1);
  for (int k = 1; k < n; ++k) {
    p = p * s.truncate(n);
    if (!is_zero(h[k])) r = r + h[k] * p;
  }
  return r;
}

// A with q(A(x)) = x, solved degree by degree.
inline Series1 compositional_inverse(const Series1& q) {
  if (!is_zero(q[0])) fail("NonzeroConstantTerm", "series must vanish at 0");
  const int n = q.order();
  if (n < 2) return Series1(n);
  if (is_zero(q[1])) fail("NotInvertible", "linear coefficient vanishes");
  Series1 a = Series1::monomial(n, 1, Scalar(1) / q[1]);
  for (int k = 2; k < n; ++k) {
    Scalar residual = compose(q, a)[k];
    a[k] -= residual / q[1];
  }
  return a;
}

// base^alpha = sum_k C(alpha, k) (base - 1)^k.
inline Series1 binomial_series(const Scalar& alpha, const Series1& base) {
  if (base[0] != 1) fail("ConstantTermNotOne", "binomial series needs base(0) = 1");
  Series1 t(base.order(), generalized_binomials(alpha, base.order()));
  return compose(t, base - Scalar(1));
}

// ---- two variables ----

inline Series2 add(const Series2& a, const Series2& b) {
  Series2 r(std::min(a.order(), b.order()));
  for (int u = 0; u < r.order(); ++u)
    for (int v = 0; v < r.order(); ++v) r(u, v) = a(u, v) + b(u, v);
  return r;
}
inline Series2 sub(const Series2& a, const Series2& b) {
  Series2 r(std::min(a.order(), b.order()));
  for (int u = 0; u < r.order(); ++u)
    for (int v = 0; v < r.order(); ++v) r(u, v) = a(u, v) - b(u, v);
  return r;
}
inline Series2 scale(const Series2& a, const Scalar& s) {
  Series2 r(a.order());
  for (int u = 0; u < r.order(); ++u)
    for (int v = 0; v < r.order(); ++v) r(u, v) = a(u, v) * s;
  return r;
}
inline Series2 mul(const Series2& a, const Series2& b) {
  const int n = std::min(a.order(), b.order());
  Series2 r(n);
  for (int u1 = 0; u1 < n; ++u1)
    for (int v1 = 0; v1 < n; ++v1) {
      const Scalar& x = a(u1, v1);
      if (is_zero(x)) continue;
      for (int u2 = 0; u1 + u2 < n; ++u2)
        for (int v2 = 0; v1 + v2 < n; ++v2)
          if (!is_zero(b(u2, v2))) r(u1 + u2, v1 + v2) += x * b(u2, v2);
    }
  return r;
}
// H(x,y) * a(x).
inline Series2 mul_x(const Series2& h, const Series1& a) {
  const int n = std::min(h.order(), a.order());
  Series2 r(n);
  for (int v = 0; v < n; ++v) r.set_slice_y(v, h.slice_y(v).truncate(n) * a.truncate(n));
  return r;
}
// H(x,y) * b(y).
inline Series2 mul_y(const Series2& h, const Series1& b) { return mul_x(h.transpose(), b).transpose(); }

inline Series2 operator+(const Series2& a, const Series2& b) { return add(a, b); }
inline Series2 operator-(const Series2& a, const Series2& b) { return sub(a, b); }
inline Series2 operator-(const Series2& a) { return scale(a, -1); }
inline Series2 operator*(const Series2& a, const Series2& b) { return mul(a, b); }
inline Series2 operator*(const Scalar& s, const Series2& a) { return scale(a, s); }

inline Series2 derivative_x(const Series2& h) {
  Series2 r(h.order());
  for (int u = 1; u < h.order(); ++u)
    for (int v = 0; v < h.order(); ++v) r(u - 1, v) = h(u, v) * u;
  return r;
}
inline Series2 derivative_y(const Series2& h) { return derivative_x(h.transpose()).transpose(); }

inline std::vector<Series2> powers(const Series2& a, int kmax) {
  Series2 one(a.order());
  one(0, 0) = 1;
  std::vector<Series2> out{one};
  for (int k = 1; k <= kmax; ++k) out.push_back(out.back() * a);
  return out;
}

// h(S). Requires S(0,0) = 0 and x | S or y | S, so S^k has degree >= k in one
// variable and every retained coefficient of the result is exact.
inline Series2 compose(const Series1& h, const Series2& s) {
  const int n = std::min(h.order(), s.order());
  if (!is_zero(s(0, 0))) fail("NonzeroConstantTerm", "inner series must vanish at (0,0)");
  if (!s.divisible_by_x() && !s.divisible_by_y())
    fail("NonzeroConstantTerm", "inner series must be divisible by x or by y");
  Series2 st = s.truncate(n);
  Series2 r(n);
  r(0, 0) = h[0];
  Series2 p(n);
  p(0, 0) = 1;
  for (int k = 1; k < n; ++k) {
    p = p * st;
    if (!is_zero(h[k])) r = r + h[k] * p;
  }
  return r;
}

}  // namespace qcycle
