#pragma once

#include <array>
#include <string>
#include <vector>

#include "qcycle/matrix.hpp"
#include "qcycle/report.hpp"
#include "qcycle/tensor.hpp"

namespace qcycle {

// Endomorphism of C (x) C; column i*n + j is the image of x_i (x) x_j.
struct LinearMap2 {
  int n = 0;
  Matrix m;

  static LinearMap2 zero(int n) { return {n, Matrix(n * n, n * n)}; }
  static LinearMap2 identity(int n) { return {n, Matrix::identity(n * n)}; }
  static LinearMap2 flip(int n) {
    LinearMap2 f = zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f.at(j, i, i, j) = 1;
    return f;
  }

  // Coefficient of x_k (x) x_l in the image of x_i (x) x_j.
  Scalar& at(int k, int l, int i, int j) { return m(k * n + l, i * n + j); }
  const Scalar& at(int k, int l, int i, int j) const { return m(k * n + l, i * n + j); }

  bool operator==(const LinearMap2& o) const { return n == o.n && m == o.m; }
  bool operator!=(const LinearMap2& o) const { return !(*this == o); }
};

inline LinearMap2 compose(const LinearMap2& a, const LinearMap2& b) { return {a.n, a.m * b.m}; }

struct BraidViolation {
  int family;  // 1, 2 or 3
  int i, j, k, m;
  Scalar lhs, rhs;
};

struct BraidReport {
  std::array<bool, 3> family_ok{true, true, true};
  std::vector<BraidViolation> violations;  // capped at kMaxViolations
  static constexpr std::size_t kMaxViolations = 20;

  bool ok() const { return family_ok[0] && family_ok[1] && family_ok[2]; }
};

namespace detail {

// S[i][j][k][m] = sum_{a+b=j} sum_{h<=i} sum_{l<=k} A_{ia}^h B_{kb}^l Z_{hl}^m,
// for m in [m_lo, m_hi]. Both sides of every braid family have this shape:
// the right side is S with the roles of j and k exchanged.
class BraidSide {
 public:
  BraidSide(const CoeffTensor& A, const CoeffTensor& B, const CoeffTensor& Z, int m_lo, int m_hi)
      : n_(A.n()), lo_(m_lo), w_(m_hi - m_lo + 1), s_(static_cast<std::size_t>(n_) * n_ * n_ * w_) {
    const int n = n_;
    // T[h][k][b][m] = sum_{l<=k} B_{kb}^l Z_{hl}^m
    std::vector<Scalar> T(static_cast<std::size_t>(n) * n * n * w_);
    auto tix = [&](int h, int k, int b, int m) { return ((static_cast<std::size_t>(h) * n + k) * n + b) * w_ + m; };
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        for (int b = 0; b < n; ++b)
          for (int l = 0; l <= k; ++l) {
            const Scalar& x = B(k, b, l);
            if (is_zero(x)) continue;
            for (int m = 0; m < w_; ++m)
              if (!is_zero(Z(h, l, lo_ + m))) T[tix(h, k, b, m)] += x * Z(h, l, lo_ + m);
          }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a <= j; ++a)
          for (int h = 0; h <= i; ++h) {
            const Scalar& x = A(i, a, h);
            if (is_zero(x)) continue;
            for (int k = 0; k < n; ++k)
              for (int m = 0; m < w_; ++m) {
                const Scalar& y = T[tix(h, k, j - a, m)];
                if (!is_zero(y)) s_[index(i, j, k, m)] += x * y;
              }
          }
  }
  const Scalar& operator()(int i, int j, int k, int m) const { return s_[index(i, j, k, m - lo_)]; }

 private:
  std::size_t index(int i, int j, int k, int m) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * w_ + m;
  }
  int n_, lo_, w_;
  std::vector<Scalar> s_;
};

inline void require_comultiplicative(const QCycleStructure& s) {
  auto mp = is_coalgebra_morphism(s.p);
  if (!mp.ok) fail("NotComultiplicative", "p violates comultiplicativity at " + mp.where);
  auto md = is_coalgebra_morphism(s.d);
  if (!md.ok) fail("NotComultiplicative", "d violates comultiplicativity at " + md.where);
}

inline void compare_family(BraidReport& r, int family, const BraidSide& lhs, const BraidSide& rhs, int n, int m_lo,
                           int m_hi) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = m_lo; m <= m_hi; ++m) {
          const Scalar& a = lhs(i, j, k, m);
          const Scalar& b = rhs(i, k, j, m);
          if (a == b) continue;
          r.family_ok[family - 1] = false;
          if (r.violations.size() < BraidReport::kMaxViolations) r.violations.push_back({family, i, j, k, m, a, b});
        }
}

}  // namespace detail

// The three output-level-1 equations.
inline BraidReport check_braid_reduced(const QCycleStructure& s) {
  detail::require_comultiplicative(s);
  const int n = s.n();
  const auto &p = s.p, &d = s.d;
  BraidReport r;
  using detail::BraidSide;
  detail::compare_family(r, 1, BraidSide(p, d, p, 1, 1), BraidSide(p, p, p, 1, 1), n, 1, 1);
  detail::compare_family(r, 2, BraidSide(p, p, d, 1, 1), BraidSide(d, d, p, 1, 1), n, 1, 1);
  detail::compare_family(r, 3, BraidSide(d, p, d, 1, 1), BraidSide(d, d, d, 1, 1), n, 1, 1);
  return r;
}

// The full systems, every output level m. The third family is written here
// with its two sides as they come out of the defining identity; the reduced
// form lists the same equations with j and k exchanged.
inline BraidReport check_braid_full(const QCycleStructure& s) {
  detail::require_comultiplicative(s);
  const int n = s.n();
  const auto &p = s.p, &d = s.d;
  BraidReport r;
  using detail::BraidSide;
  const int hi = n - 1;
  detail::compare_family(r, 1, BraidSide(p, d, p, 0, hi), BraidSide(p, p, p, 0, hi), n, 0, hi);
  detail::compare_family(r, 2, BraidSide(p, p, d, 0, hi), BraidSide(d, d, p, 0, hi), n, 0, hi);
  detail::compare_family(r, 3, BraidSide(d, d, d, 0, hi), BraidSide(d, p, d, 0, hi), n, 0, hi);
  return r;
}

// G_t(x_i (x) x_j) = sum_{a+b=j} sum_k t_{ia}^k x_k (x) x_b. Serves both G_p
// and G_d: C is cocommutative, so splitting b as b_(1) (x) b_(2) or the other
// way round gives the same matrix.
inline LinearMap2 g_map(const CoeffTensor& t) {
  const int n = t.n();
  LinearMap2 g = LinearMap2::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a <= j; ++a)
        for (int k = 0; k < n; ++k)
          if (!is_zero(t(i, a, k))) g.at(k, j - a, i, j) += t(i, a, k);
  return g;
}
inline LinearMap2 gp_map(const CoeffTensor& p) { return g_map(p); }
inline LinearMap2 gd_map(const CoeffTensor& d) { return g_map(d); }

struct SolutionParts {
  LinearMap2 s;
  LinearMap2 gp_inverse;   // H(a (x) b) = a^{b_(1)} (x) b_(2)
  CoeffTensor upper;       // x_i^{x_j} = sum_k upper_{ij}^k x_k
  CoeffTensor left;        // {}^{x_i} x_j = sum_k left_{ij}^k x_k
};

// s(a (x) b) = {}^{a_(1)} b_(2) (x) a_(2)^{b_(1)} with a^b = (id (x) eps) G_p^{-1}(a (x) b)
// and {}^a b = b_(2) : a^{b_(1)}.
inline SolutionParts build_solution_parts(const QCycleStructure& st) {
  const int n = st.n();
  SolutionParts out;
  try {
    out.gp_inverse = {n, inverse(gp_map(st.p).m)};
  } catch (const Error&) {
    fail("SingularGp", "G_p is not invertible");
  }
  if (is_zero(determinant(gd_map(st.d).m))) fail("SingularGd", "G_d is not invertible");

  out.upper = CoeffTensor(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.upper.at(i, j, k) = out.gp_inverse.at(k, 0, i, j);

  out.left = CoeffTensor(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c <= j; ++c)
        for (int m = 0; m < n; ++m) {
          const Scalar& u = out.upper(i, c, m);
          if (is_zero(u)) continue;
          for (int k = 0; k < n; ++k)
            if (!is_zero(st.d(j - c, m, k))) out.left.at(i, j, k) += u * st.d(j - c, m, k);
        }

  out.s = LinearMap2::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int i1 = 0; i1 <= i; ++i1)
        for (int j1 = 0; j1 <= j; ++j1)
          for (int k = 0; k < n; ++k) {
            const Scalar& x = out.left(i1, j - j1, k);
            if (is_zero(x)) continue;
            for (int l = 0; l < n; ++l) {
              const Scalar& y = out.upper(i - i1, j1, l);
              if (!is_zero(y)) out.s.at(k, l, i, j) += x * y;
            }
          }
  return out;
}

inline LinearMap2 build_solution(const QCycleStructure& st) { return build_solution_parts(st).s; }

// s12 s23 s12 == s23 s12 s23 on C^{(x)3}.
inline bool check_braid_on_map(const LinearMap2& s) {
  const Matrix I = Matrix::identity(s.n);
  const Matrix s12 = kron(s.m, I), s23 = kron(I, s.m);
  return s12 * (s23 * s12) == s23 * (s12 * s23);
}

inline bool is_coalgebra_endomorphism(const LinearMap2& s) {
  const int n = s.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.at(0, 0, i, j) != Scalar(i == 0 && j == 0 ? 1 : 0)) return false;
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  std::vector<Scalar> lhs(n2 * n2), rhs(n2 * n2);
  auto ix = [&](int k1, int l1, int k2, int l2) { return (static_cast<std::size_t>(k1) * n + l1) * n2 + k2 * n + l2; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(lhs.begin(), lhs.end(), Scalar(0));
      std::fill(rhs.begin(), rhs.end(), Scalar(0));
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Scalar& x = s.at(k, l, i, j);
          if (is_zero(x)) continue;
          for (int k1 = 0; k1 <= k; ++k1)
            for (int l1 = 0; l1 <= l; ++l1) lhs[ix(k1, l1, k - k1, l - l1)] = x;
        }
      for (int i1 = 0; i1 <= i; ++i1)
        for (int j1 = 0; j1 <= j; ++j1)
          for (int k1 = 0; k1 < n; ++k1)
            for (int l1 = 0; l1 < n; ++l1) {
              const Scalar& x = s.at(k1, l1, i1, j1);
              if (is_zero(x)) continue;
              for (int k2 = 0; k2 < n; ++k2)
                for (int l2 = 0; l2 < n; ++l2) {
                  const Scalar& y = s.at(k2, l2, i - i1, j - j1);
                  if (!is_zero(y)) rhs[ix(k1, l1, k2, l2)] += x * y;
                }
            }
      if (lhs != rhs) return false;
    }
  return true;
}

inline bool is_bijective(const LinearMap2& s) { return !is_zero(determinant(s.m)); }

inline bool is_involutive(const LinearMap2& s) { return compose(s, s) == LinearMap2::identity(s.n); }

// Consequences of the braid equations every regular q-cycle coalgebra obeys.
inline Report structure_sanity(const QCycleStructure& s) {
  const int n = s.n();
  const auto &p = s.p, &d = s.d;
  Report r;
  const bool ones = p(1, 0, 1) == 1 && d(1, 0, 1) == 1;
  const bool zeros = is_zero(p(1, 1, 1)) && is_zero(d(1, 1, 1));
  r.add("p10_d10_one_or_p11_d11_zero", ones || zeros, ones ? "p10 = d10 = 1" : (zeros ? "p11 = d11 = 0" : ""));
  r.add("p11_equals_d11", p(1, 1, 1) == d(1, 1, 1));
  for (const auto* t : {&p, &d}) {
    FirstFailure ff;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar sum = 0;
        for (int l = 0; l <= j; ++l) sum += (*t)(j, 0, l) * (*t)(i, l, i);
        if (sum != (*t)(i, j, i)) ff.note(idx({i, j}));
      }
    r.add(t == &p ? "column0_expansion_p" : "column0_expansion_d", ff.ok(), ff.where());
  }
  return r;
}

}  // namespace qcycle
