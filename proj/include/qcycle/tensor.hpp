#pragma once

#include <string>
#include <vector>

#include "qcycle/report.hpp"
#include "qcycle/scalar.hpp"
#include "qcycle/series.hpp"

namespace qcycle {

// Entries p_{ij}^k of a map C (x) C -> C, 0 <= i, j, k < n. Reads outside
// the cube return 0.
class CoeffTensor {
 public:
  CoeffTensor() : CoeffTensor(2) {}
  explicit CoeffTensor(int n) : n_(n), e_(static_cast<std::size_t>(n) * n * n) {
    if (n < 2) fail("InvalidDimension", "n must be at least 2, got " + std::to_string(n));
  }

  int n() const { return n_; }
  const Scalar& operator()(int i, int j, int k) const {
    static const Scalar kZero = 0;
    if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_) return kZero;
    return e_[index(i, j, k)];
  }
  Scalar& at(int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_)
      fail("IndexOutOfRange", "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
    return e_[index(i, j, k)];
  }

  bool operator==(const CoeffTensor& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const CoeffTensor& o) const { return !(*this == o); }

 private:
  std::size_t index(int i, int j, int k) const { return (static_cast<std::size_t>(i) * n_ + j) * n_ + k; }
  int n_;
  std::vector<Scalar> e_;
};

// A candidate q-cycle coalgebra (p, d). d == p is the involutive case.
struct QCycleStructure {
  CoeffTensor p;
  CoeffTensor d;

  QCycleStructure() = default;
  explicit QCycleStructure(CoeffTensor t) : p(t), d(std::move(t)) {}
  QCycleStructure(CoeffTensor p_, CoeffTensor d_) : p(std::move(p_)), d(std::move(d_)) {
    if (p.n() != d.n()) fail("DimensionMismatch", "p and d must share n");
  }
  int n() const { return p.n(); }
  bool involutive() const { return p == d; }
  bool regular() const { return !is_zero(p(1, 0, 1)) && !is_zero(d(1, 0, 1)); }
};

using Level1 = std::vector<std::vector<Scalar>>;  // level1[i][j] = p_{ij}^1

inline Level1 zero_level1(int n) { return Level1(n, std::vector<Scalar>(n)); }

inline Level1 level1_of(const CoeffTensor& t) {
  Level1 l = zero_level1(t.n());
  for (int i = 0; i < t.n(); ++i)
    for (int j = 0; j < t.n(); ++j) l[i][j] = t(i, j, 1);
  return l;
}

inline std::string idx(std::initializer_list<int> xs) {
  std::string s = "(";
  bool first = true;
  for (int x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + ")";
}

// Sum_{a+b=i, c+d=j} t_{ac}^l t_{bd}^h: the coefficient of x_i (x) x_j under
// the (l, h) part of Delta(p(x_i (x) x_j)) in terms of level-l and level-h data.
inline Scalar split_sum(const CoeffTensor& t, int i, int j, int l, int h) {
  Scalar s = 0;
  for (int a = 0; a <= i; ++a)
    for (int c = 0; c <= j; ++c) {
      const Scalar& x = t(a, c, l);
      if (is_zero(x)) continue;
      const Scalar& y = t(i - a, j - c, h);
      if (!is_zero(y)) s += x * y;
    }
  return s;
}

struct MorphismCheck {
  bool ok = true;
  std::string where;  // "(i,j,l,h)" or "(i,j,0)" for the counit condition
  Scalar lhs, rhs;
};

// p^0 = delta_{0,i+j} and p_{ij}^{l+h} = sum p_{ac}^l p_{bd}^h for l + h < n.
inline MorphismCheck is_coalgebra_morphism(const CoeffTensor& t) {
  const int n = t.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar want = (i + j == 0) ? 1 : 0;
      if (t(i, j, 0) != want) return {false, idx({i, j, 0}), t(i, j, 0), want};
    }
  for (int l = 0; l < n; ++l)
    for (int h = 0; l + h < n; ++h)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Scalar rhs = split_sum(t, i, j, l, h);
          if (t(i, j, l + h) != rhs) return {false, idx({i, j, l, h}), t(i, j, l + h), rhs};
        }
  return {};
}

// Level 0 is delta_{0,i+j}; level w >= 2 follows p^w = sum p^1 p^{w-1}.
inline CoeffTensor extend_from_level1(const Level1& level1) {
  const int n = static_cast<int>(level1.size());
  CoeffTensor t(n);
  t.at(0, 0, 0) = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(i, j, 1) = level1[i][j];
  for (int w = 2; w < n; ++w)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) t.at(u, v, w) = split_sum(t, u, v, 1, w - 1);
  return t;
}

// Sanity lemmas any coalgebra morphism obeys, plus the extra vanishing that
// regularity (p_{10}^1 != 0) forces.
inline Report structural_lemma_suite(const CoeffTensor& t) {
  auto m = is_coalgebra_morphism(t);
  if (!m.ok) fail("NotComultiplicative", "violation at " + m.where);
  const int n = t.n();
  const Scalar p10 = t(1, 0, 1), p01 = t(0, 1, 1), p11 = t(1, 1, 1);
  const bool regular = !is_zero(p10);
  Report r;

  FirstFailure filtered, top, row1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = i + j + 1; k < n; ++k)
        if (!is_zero(t(i, j, k))) filtered.note(idx({i, j, k}));
  r.add("vanishes_above_i_plus_j", filtered.ok(), filtered.where());

  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j)
      if (t(i, j, i + j) != binomial(i + j, i) * power(p10, i) * power(p01, j)) top.note(idx({i, j, i + j}));
  r.add("top_level_binomial", top.ok(), top.where());

  // Regular-only checks pass vacuously (with a note) when p_{10}^1 = 0.
  const std::string skipped = regular ? "" : "not regular, skipped";
  FirstFailure below;
  for (int i = 0; i < n && regular; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = i + 1; k < n; ++k)
        if (!is_zero(t(i, j, k))) below.note(idx({i, j, k}));
  r.add("regular_vanishes_above_i", below.ok(), below.ok() ? skipped : below.where());

  for (int i = 1; i < n && regular; ++i)
    if (t(i, 1, i) != Scalar(i) * p11 * power(p10, i - 1)) row1.note(idx({i, 1, i}));
  r.add("regular_column1_diagonal", row1.ok(), row1.ok() ? skipped : row1.where());

  // Virtual levels >= n must vanish: sum p^l p^h = 0 when l + h >= n.
  FirstFailure overflow;
  for (int l = 1; l < n; ++l)
    for (int h = n - l; h < n; ++h)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!is_zero(split_sum(t, i, j, l, h))) overflow.note(idx({i, j, l, h}));
  r.add("overflow_levels_vanish", overflow.ok(), overflow.where());
  return r;
}

inline CoeffTensor rescale(const CoeffTensor& t, const Scalar& lambda) {
  if (is_zero(lambda)) fail("ZeroLambda", "rescale needs lambda != 0");
  const int n = t.n();
  CoeffTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!is_zero(t(i, j, k))) r.at(i, j, k) = power(lambda, k - i - j) * t(i, j, k);
  return r;
}

inline QCycleStructure rescale(const QCycleStructure& s, const Scalar& lambda) {
  return {rescale(s.p, lambda), rescale(s.d, lambda)};
}

// For degree one, g determines f through
// (j-1) f_j = sum_{i=1}^{j-1} f_i f_{j-i} - sum_{h=1}^{j-1} h g_{j-h+1} f_h.
inline Series1 reconstruct_f_from_g(const Series1& g) {
  const int n = g.order();
  if (!is_zero(g[0])) fail("BadLinearTerm", "g must vanish at 0");
  if (n > 1 && g[1] != 1) fail("BadLinearTerm", "g must have linear coefficient 1");
  Series1 f(n);
  f[0] = 1;
  if (n > 1) f[1] = 1;
  for (int j = 2; j < n; ++j) {
    Scalar s = 0;
    for (int i = 1; i < j; ++i) s += f[i] * f[j - i];
    for (int h = 1; h < j; ++h) s -= Scalar(h) * g[j - h + 1] * f[h];
    f[j] = s / (j - 1);
  }
  return f;
}

}  // namespace qcycle
