#pragma once

#include <string>
#include <vector>

#include "qcycle/report.hpp"
#include "qcycle/series.hpp"
#include "qcycle/tensor.hpp"

namespace qcycle {

// f = 1 + x^{v0} + sum_{v0 < v < n} p_v x^v.
struct SccInput {
  int n = 2;
  int v0 = 1;
  std::vector<Scalar> tail;  // p_{v0+1}, ..., p_{n-1}

  static SccInput make(int n, int v0, std::vector<Scalar> tail) {
    if (n < 2) fail("InvalidDimension", "n must be at least 2");
    if (v0 < 1 || v0 >= n) fail("InvalidDegree", "need 1 <= v0 < n");
    if (static_cast<int>(tail.size()) != n - 1 - v0)
      fail("ValidationError", "expected " + std::to_string(n - 1 - v0) + " parameters p_{v0+1..n-1}, got " +
                                  std::to_string(tail.size()));
    for (auto& a : tail) a.canonicalize();
    return {n, v0, std::move(tail)};
  }

  // f at any order >= 1; coefficients beyond n-1 are zero.
  Series1 f(int order) const {
    Series1 s = Series1::constant(order, 1);
    if (v0 < order) s[v0] = 1;
    for (int i = 0; i < static_cast<int>(tail.size()) && v0 + 1 + i < order; ++i) s[v0 + 1 + i] = tail[i];
    return s;
  }
  // p_{1v}^1 for v < n, i.e. the coefficients of f with p_{10}^1 = 1.
  std::vector<Scalar> row() const { return f(n).coeffs(); }
};

struct SccBundle {
  SccInput input;
  int order = 0;  // truncation order of the series, >= n
  Series1 f, g;
  Series2 G, F;
  CoeffTensor tensor;  // dimension input.n
};

// g = f (f^{v0} - 1) / f', obtained exactly at `order` by working v0 - 1
// degrees higher before the shifted division.
inline Series1 scc_g(const SccInput& in, int order) {
  const int pad = order + in.v0;
  Series1 f = in.f(pad);
  Series1 num = f * (pow(f, in.v0) - Scalar(1));
  return divide_exact(num, derivative(f)).truncate(order);
}

// G = sum g_v(x) y^v from g_0 = x and
// (v+1) g_{v+1} = g sum_l (v-l+1) p_{v-l+1} g_l' - sum_{l>=1} p_{v-l+1} l g_l.
inline Series2 scc_G(const SccInput& in, const Series1& g) {
  const int N = g.order();
  Series1 f = in.f(N);
  std::vector<Series1> gv(N, Series1(N)), dgv(N, Series1(N));
  gv[0] = Series1::monomial(N, 1);
  dgv[0] = derivative(gv[0]);
  auto p = [&](int m) { return m >= 0 && m < N ? f[m] : Scalar(0); };
  for (int v = 0; v + 1 < N; ++v) {
    Series1 inner(N), rest(N);
    for (int l = 0; l <= v - in.v0 + 1; ++l) {
      const Scalar c = Scalar(v - l + 1) * p(v - l + 1);
      if (!is_zero(c)) inner = inner + c * dgv[l];
    }
    for (int l = 1; l <= v - in.v0 + 1; ++l) {
      const Scalar c = p(v - l + 1) * l;
      if (!is_zero(c)) rest = rest + c * gv[l];
    }
    gv[v + 1] = scale(g * inner - rest, Scalar(1, v + 1));
    dgv[v + 1] = derivative(gv[v + 1]);
  }
  Series2 G(N);
  for (int v = 0; v < N; ++v) G.set_slice_y(v, gv[v]);
  return G;
}

inline Level1 level1_from_series(const Series2& G, int n) {
  Level1 l = zero_level1(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) l[u][v] = G(u, v);
  return l;
}

// Series at order max(n, order); tensor at dimension n. Tensor entries only
// read coefficients below n.
inline SccBundle build_scc(const SccInput& in, int order = 0) {
  SccBundle b;
  b.input = in;
  b.order = std::max(order, in.n);
  b.f = in.f(b.order);
  b.g = scc_g(in, b.order);
  b.G = scc_G(in, b.g);
  b.F = b.G.transpose();
  b.tensor = extend_from_level1(level1_from_series(b.G, in.n));
  return b;
}

inline SccBundle build_scc(int n, int v0, std::vector<Scalar> tail) {
  return build_scc(SccInput::make(n, v0, std::move(tail)));
}

// The facts about G and the tensor entries established for every SCC.
inline Report scc_invariant_suite_v0(const SccBundle& b) {
  const int n = b.input.n, v0 = b.input.v0, N = b.order;
  const CoeffTensor& t = b.tensor;
  Report r;

  {
    Series1 lhs = b.g * derivative(b.f), rhs = b.f * (pow(b.f, v0) - Scalar(1));
    FirstFailure ff;
    for (int i = 0; i + 1 < N; ++i)
      if (lhs[i] != rhs[i]) ff.note("x^" + std::to_string(i));
    r.add("g_times_f_prime", ff.ok(), ff.where());
  }
  {
    FirstFailure small, gv0, at0, gx0;
    for (int v = 1; v < v0 && v < N; ++v)
      if (!b.G.slice_y(v).is_zero()) small.note("g_" + std::to_string(v));
    r.add("g_v_vanish_below_v0", small.ok(), small.where());
    if (b.G.slice_y(v0) != b.g) gv0.note("g_v0");
    r.add("g_v0_equals_g", gv0.ok(), gv0.where());
    for (int v = 0; v < N; ++v)
      if (!is_zero(b.G(0, v))) at0.note("y^" + std::to_string(v));
    r.add("G_at_x0_vanishes", at0.ok(), at0.where());
    for (int v = 0; v < N; ++v)
      if (b.G(1, v) != b.f[v]) gx0.note("y^" + std::to_string(v));
    r.add("G_x_at_x0_is_f", gx0.ok(), gx0.where());
  }
  {
    FirstFailure row, low, delta, kill, diag, deriv;
    for (int v = 0; v < n; ++v)
      if (t(1, v, 1) != b.f[v]) row.note(idx({1, v, 1}));
    r.add("row1_is_f", row.ok(), row.where());
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int w = u + 1; w < n; ++w)
          if (!is_zero(t(u, v, w))) low.note(idx({u, v, w}));
    r.add("vanishes_for_u_below_w", low.ok(), low.where());
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (t(j, 0, k) != Scalar(j == k ? 1 : 0)) delta.note(idx({j, 0, k}));
    r.add("column0_is_delta", delta.ok(), delta.where());
    for (int i = 0; i < n; ++i)
      for (int j = 1; j < v0; ++j)
        for (int k = 0; k < n; ++k)
          if (!is_zero(t(i, j, k))) kill.note(idx({i, j, k}));
    r.add("columns_below_v0_vanish", kill.ok(), kill.where());
    for (int k = 1; k < n; ++k) {
      if (t(k, v0, k) != Scalar(k) * t(1, v0, 1)) diag.note(idx({k, v0, k}));
      for (int i = 1; i < v0; ++i)
        if (!is_zero(t(k, i, k))) diag.note(idx({k, i, k}));
    }
    r.add("diagonal_k_v0_is_k", diag.ok(), diag.where());
    for (int i = 0; i < n; ++i)
      for (int k = 1; k < n; ++k) {
        Scalar want = (i - k + 1 >= 0) ? Scalar(k) * t(i - k + 1, v0, 1) : Scalar(0);
        if (t(i, v0, k) != want) deriv.note(idx({i, v0, k}));
      }
    r.add("column_v0_acts_as_derivation", deriv.ok(), deriv.where());
    FirstFailure col;
    for (int i = 0; i < n; ++i)
      if (t(i, v0, 1) != b.g[i]) col.note(idx({i, v0, 1}));
    r.add("column_v0_is_g", col.ok(), col.where());
  }
  return r;
}

namespace detail {

// Higher levels recomputed from the level-1 entries filled so far.
inline CoeffTensor partial_extension(const Level1& l1) { return extend_from_level1(l1); }

inline Scalar checked_div(const Scalar& num, const Scalar& den, int i, int j) {
  if (is_zero(den)) fail("DivisionByZero", "recursion denominator vanishes at " + idx({i, j}));
  return num / den;
}

}  // namespace detail

// Rebuilds the whole tensor from the row p_{1v}^1 using only the coefficient
// recursions that the braid equation at output level 1 forces, with no series
// arithmetic. For v0 = 1 any p_{11}^1 != 0 is accepted.
inline CoeffTensor reconstruct_from_row(int n, int v0, const std::vector<Scalar>& row) {
  if (n < 2 || v0 < 1 || v0 >= n) fail("ValidationError", "need n >= 2 and 1 <= v0 < n");
  if (static_cast<int>(row.size()) != n) fail("ValidationError", "row must have n entries");
  if (row[0] != 1) fail("ValidationError", "row needs p_10^1 = 1");
  for (int v = 1; v < v0; ++v)
    if (!is_zero(row[v])) fail("ValidationError", "row needs p_1v^1 = 0 below v0");
  if (v0 > 1 && row[v0] != 1) fail("ValidationError", "row needs p_1v0^1 = 1");

  Level1 l1 = zero_level1(n);
  l1[1] = row;
  const Scalar p11 = row[1];

  if (v0 == 1) {
    // Column 1: p_{j1}^1 p11 = p11 sum_{a<j} p_{1a} p_{1,j-a} - sum_{l=2}^{j} l p_{j-l+1,1}^1 p_{1l}^1.
    for (int j = 2; j < n; ++j) {
      Scalar s = 0;
      for (int a = 0; a < j; ++a) s += row[a] * row[j - a];
      s *= p11;
      for (int l = 2; l <= j; ++l) s -= Scalar(l) * l1[j - l + 1][1] * row[l];
      l1[j][1] = detail::checked_div(s, p11, j, 1);
    }
  } else {
    // Column v0 is g, from g f' = f^{v0+1} - f solved degree by degree.
    std::vector<Scalar> fp(n + v0 + 1), fpow(n + v0 + 1), df(n + v0 + 1);
    for (int v = 0; v < n; ++v) fp[v] = row[v];
    fp[0] = 1;
    const int M = n + v0;
    std::vector<Scalar> acc(M, 0);
    acc[0] = 1;
    for (int e = 0; e < v0 + 1; ++e) {
      std::vector<Scalar> next(M, 0);
      for (int a = 0; a < M; ++a)
        for (int b = 0; a + b < M && b < n; ++b) next[a + b] += acc[a] * fp[b];
      acc = next;
    }
    for (int v = 1; v < M; ++v) df[v - 1] = Scalar(v) * fp[v];
    std::vector<Scalar> g(n, 0);
    for (int i = 1; i < n; ++i) {
      const int deg = i + v0 - 1;  // coefficient of x^deg in g f'
      Scalar rhs = acc[deg] - fp[deg];
      for (int a = 1; a < i; ++a) rhs -= g[a] * df[deg - a];
      g[i] = rhs / df[v0 - 1];
    }
    for (int i = 0; i < n; ++i) l1[i][v0] = g[i];
  }
  for (int j = 0; j < n; ++j) l1[j][0] = Scalar(j == 1 ? 1 : 0);
  l1[1] = row;

  // Remaining entries (i, j) with i > 1, j > v0 in row-major order. Levels
  // h >= 2 at row i only involve rows < i and columns <= v0, both known here.
  for (int i = 2; i < n; ++i) {
    CoeffTensor ext = detail::partial_extension(l1);
    auto P = [&](int a, int b, int h) -> Scalar {
      if (a < 0 || b < 0 || a >= n || b >= n || h < 0 || h >= n) return 0;
      return h == 1 ? l1[a][b] : ext(a, b, h);
    };
    for (int j = v0 + 1; j < n; ++j) {
      Scalar left = 0, right = 0;
      if (v0 == 1) {
        // sum_{a+b=j, 1<=h<=i, (a,h) != (j,1)} p_{ia}^h p_{1b}^1 p_{h1}^1
        for (int a = 0; a <= j; ++a)
          for (int h = 1; h <= i; ++h) {
            if (a == j && h == 1) continue;
            left += P(i, a, h) * P(1, j - a, 1) * P(h, 1, 1);
          }
        // sum_{c+d=1, 1<=h<=i, 1<=l<=j, (h,l) != (i,j)} p_{ic}^h p_{jd}^l p_{hl}^1
        for (int c = 0; c <= 1; ++c)
          for (int h = 1; h <= i; ++h)
            for (int l = 1; l <= j; ++l) {
              if (h == i && l == j) continue;
              right += P(i, c, h) * P(j, 1 - c, l) * P(h, l, 1);
            }
        l1[i][j] = detail::checked_div(left - right, Scalar(i + j - 1) * p11, i, j);
      } else {
        // sum_{a+b=j, 1<=h<=i, (h,a) != (1,j)} p_{ia}^h p_{v0,b}^{v0} p_{h,v0}^1
        for (int a = 0; a <= j; ++a)
          for (int h = 1; h <= i; ++h) {
            if (h == 1 && a == j) continue;
            left += P(i, a, h) * P(v0, j - a, v0) * P(h, v0, 1);
          }
        // sum_{c+d=v0, 1<=h<=i, 1<=l<=j, (h,l) != (i,j)} p_{ic}^h p_{jd}^l p_{hl}^1
        for (int c = 0; c <= v0; ++c)
          for (int h = 1; h <= i; ++h)
            for (int l = 1; l <= j; ++l) {
              if (h == i && l == j) continue;
              right += P(i, c, h) * P(j, v0 - c, l) * P(h, l, 1);
            }
        l1[i][j] = detail::checked_div(left - right, Scalar(i + j - 1), i, j);
      }
    }
  }
  return extend_from_level1(l1);
}

}  // namespace qcycle
