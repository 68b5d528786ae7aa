#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcycle/matrix.hpp"
#include "qcycle/random.hpp"
#include "qcycle/report.hpp"
#include "qcycle/scc.hpp"

namespace qcycle {

// Everything the operator calculus needs at truncation order N, built once.
// Series live at order N and the tensor `big` has dimension N, so every
// coefficient an identity reads is available.
struct OperatorContext {
  SccBundle bundle;  // series at order N
  int N = 0, v0 = 1;
  Series1 fbar, W;   // f - 1 and f^{v0}
  Series2 Gbar;      // G - x
  Series2 Pseries, Qseries;
  Series1 Q1, A, S, V;
  Series2 U, T;
  CoeffTensor big;
  std::vector<Series2> gbar_pow, p_pow, f_pow, t_pow;  // exponents 0 .. N-1
  std::vector<Series1> fbar_pow;

  Series1 partial_x(int v, const Series1& h) const { return apply(coeff_gbar_, v, h); }
  Series2 partial_x(int v, const Series2& h) const { return per_slice(coeff_gbar_, v, h); }
  Series2 partial_y(int u, const Series2& h) const { return per_slice(coeff_gbar_, u, h.transpose()).transpose(); }
  Series2 partial_global(int k, const Series2& h) const {
    check_degree(k);
    Series2 r(N);
    for (int b = 0; b <= k; ++b) r = r + partial_x(k - b, partial_y(b, h));
    return r;
  }

  Series1 tilde_partial_x(int v, const Series1& h) const { return apply(coeff_p_, v, h); }
  Series2 tilde_partial_x(int v, const Series2& h) const { return per_slice(coeff_p_, v, h); }
  Series2 tilde_partial_y(int v, const Series2& h) const { return per_slice(coeff_p_, v, h.transpose()).transpose(); }
  Series2 tilde_partial_global(int v, const Series2& h) const {
    check_degree(v);
    Series2 r(N);
    for (int l = 0; l <= v; ++l) r = r + tilde_partial_x(l, tilde_partial_y(v - l, h));
    return r;
  }

  // sum_{a+b=j} sum_{h<=i} sum_{l<=k} p_{ia}^h p_{kb}^l p_{hl}^1, read from `big`.
  Scalar R(int i, int j, int k) const {
    Scalar s = 0;
    for (int a = 0; a <= j; ++a)
      for (int h = 0; h <= i; ++h) {
        const Scalar& x = big(i, a, h);
        if (is_zero(x)) continue;
        for (int l = 0; l <= k; ++l) {
          const Scalar& y = big(k, j - a, l);
          if (is_zero(y)) continue;
          const Scalar& z = big(h, l, 1);
          if (!is_zero(z)) s += x * y * z;
        }
      }
    return s;
  }

  // coeff_[k][v] = (base^k)_v / k!, filled by build_context.
  std::vector<std::vector<Series1>> coeff_gbar_, coeff_p_;

 private:
  void check_degree(int v) const {
    if (v < 0 || v >= N)
      fail("DegreeOutOfRange", "operator degree " + std::to_string(v) + " outside [0, " + std::to_string(N) + ")");
  }
  Series1 apply(const std::vector<std::vector<Series1>>& coeff, int v, const Series1& h) const {
    check_degree(v);
    if (h.order() != N) fail("OrderMismatch", "operand must have order " + std::to_string(N));
    if (v == 0) return h;
    Series1 r(N), d = h;
    for (int k = 1; k <= v; ++k) {
      d = derivative(d);
      if (!coeff[k][v].is_zero()) r = r + coeff[k][v] * d;
    }
    return r;
  }
  Series2 per_slice(const std::vector<std::vector<Series1>>& coeff, int v, const Series2& h) const {
    check_degree(v);
    if (h.order() != N) fail("OrderMismatch", "operand must have order " + std::to_string(N));
    Series2 r(N);
    for (int w = 0; w < N; ++w) r.set_slice_y(w, apply(coeff, v, h.slice_y(w)));
    return r;
  }
};

namespace detail {

inline std::string xy(int u, int v) { return "x^" + std::to_string(u) + "y^" + std::to_string(v); }

// First coefficient (u < ulim, v < vlim) where a and b differ, or "".
inline std::string diff(const Series2& a, const Series2& b, int ulim = 1 << 30, int vlim = 1 << 30) {
  const int n = std::min(a.order(), b.order());
  for (int u = 0; u < std::min(n, ulim); ++u)
    for (int v = 0; v < std::min(n, vlim); ++v)
      if (a(u, v) != b(u, v)) return xy(u, v) + ": " + format_scalar(a(u, v)) + " vs " + format_scalar(b(u, v));
  return {};
}
inline std::string diff(const Series1& a, const Series1& b, int lim = 1 << 30) {
  const int n = std::min({a.order(), b.order(), lim});
  for (int i = 0; i < n; ++i)
    if (a[i] != b[i]) return "x^" + std::to_string(i) + ": " + format_scalar(a[i]) + " vs " + format_scalar(b[i]);
  return {};
}
inline std::string diff(const Matrix& a, const Matrix& b) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return "entry " + idx({i, j});
  return {};
}

inline Matrix add(const Matrix& a, const Matrix& b, const Scalar& s = 1) {
  Matrix r = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!is_zero(b(i, j))) r(i, j) += s * b(i, j);
  return r;
}

// P_v from (v+1) P_{v+1} = g P_v' - v P_v from P_1 = g.
inline std::vector<Series1> p_slices(const Series1& g) {
  const int N = g.order();
  std::vector<Series1> p(N, Series1(N));
  if (N > 1) p[1] = g;
  for (int v = 1; v + 1 < N; ++v) p[v + 1] = scale(g * derivative(p[v]) - Scalar(v) * p[v], Scalar(1, v + 1));
  return p;
}

inline std::vector<std::vector<Series1>> scaled_slices(const std::vector<Series2>& pw, int N) {
  std::vector<std::vector<Series1>> c(N, std::vector<Series1>(N, Series1(N)));
  for (int k = 1; k < N; ++k) {
    const Scalar inv = Scalar(1) / factorial(k);
    for (int v = 0; v < N; ++v) c[k][v] = scale(pw[k].slice_y(v), inv);
  }
  return c;
}

inline Series2 outer(const Series1& a, const Series1& b) { return Series2::from_x(a) * Series2::from_y(b); }

}  // namespace detail

// Builds the context at order N >= n and verifies its defining identities.
inline OperatorContext build_context(const SccBundle& b, int N) {
  if (N < b.input.n) fail("ValidationError", "truncation order must be at least n");
  OperatorContext c;
  c.N = N;
  c.v0 = b.input.v0;
  c.bundle = build_scc(b.input, N);
  const SccBundle& s = c.bundle;
  const int v0 = c.v0;
  const Series1 x = Series1::monomial(N, 1);

  c.fbar = s.f - Scalar(1);
  c.W = pow(s.f, v0);
  c.Gbar = s.G - Series2::from_x(x);
  c.big = extend_from_level1(level1_from_series(s.G, N));

  auto P = detail::p_slices(s.g);
  c.Pseries = Series2(N);
  for (int v = 0; v < N; ++v) c.Pseries.set_slice_y(v, P[v]);
  c.Qseries = Series2(N);
  for (int j = 1; j < N; ++j) {
    Series1 q(N);
    for (int i = j; i < N; ++i) q = q + Scalar(((i - j) % 2 ? -1 : 1)) * binomial(i, j) * P[i];
    c.Qseries.set_slice_y(j, q);
  }

  // (k-1) b_k = -sum_{j=1}^{k-1} g_{k-j+1} j b_j, b_1 = 1.
  c.Q1 = Series1(N);
  if (N > 1) c.Q1[1] = 1;
  for (int k = 2; k < N; ++k) {
    Scalar t = 0;
    for (int j = 1; j < k; ++j) t -= s.g[k - j + 1] * j * c.Q1[j];
    c.Q1[k] = t / (k - 1);
  }
  c.A = compositional_inverse(c.Q1);

  const Series1 one_plus_y = Series1::constant(N, 1) + x;
  c.S = Series1::constant(N, 1) - binomial_series(Scalar(-v0), one_plus_y);
  c.V = binomial_series(Scalar(-1, v0), Series1::constant(N, 1) - x) - Scalar(1);
  auto wpow = powers(c.W, N - 1);
  c.U = Series2(N);
  for (int k = 0; k < N; ++k) c.U.set_slice_y(k, scale(wpow[k], c.V[k]));
  auto spow = powers(c.S, N - 1);
  c.T = Series2(N);
  for (int k = 0; k < N; ++k) c.T = c.T + detail::outer(c.U.slice_y(k), spow[k]);

  c.gbar_pow = powers(c.Gbar, N - 1);
  c.p_pow = powers(c.Pseries, N - 1);
  c.f_pow = powers(s.F, N - 1);
  c.t_pow = powers(c.T, N - 1);
  c.fbar_pow = powers(c.fbar, N - 1);
  c.coeff_gbar_ = detail::scaled_slices(c.gbar_pow, N);
  c.coeff_p_ = detail::scaled_slices(c.p_pow, N);

  auto require = [](const std::string& name, const std::string& d) {
    if (!d.empty()) fail("InvariantViolation", name + " fails at " + d);
  };
  for (int v = 1; v + 1 < N; ++v)
    require("P_recursion", detail::diff(Scalar(v + 1) * P[v + 1], s.g * derivative(P[v]) - Scalar(v) * P[v]));
  {
    Series2 sum(N);
    for (int v = 1; v < N; ++v) sum = sum + detail::outer(P[v], c.fbar_pow[v]);
    require("Gbar_in_powers_of_fbar", detail::diff(c.Gbar, sum));
  }
  require("Q1_ode", detail::diff(s.g * derivative(c.Q1), c.Q1));
  require("A_after_Q1", detail::diff(compose(c.A, c.Q1), x));
  require("Q1_after_A", detail::diff(compose(c.Q1, c.A), x));
  require("Q1_power_vs_f", detail::diff(Scalar(v0) * pow(c.Q1, v0),
                                        Series1::constant(N, 1) - mul_inverse(pow(s.f, v0))));
  require("T_is_V_of_WS", detail::diff(c.T, compose(c.V, detail::outer(c.W, c.S))));
  return c;
}

inline OperatorContext build_context(const SccBundle& b) { return build_context(b, b.input.n); }

namespace detail {

// Collects one check per named identity with the first failing location.
class SuiteBuilder {
 public:
  explicit SuiteBuilder(Report& r) : r_(r) {}
  void check(const std::string& name, const std::function<void(FirstFailure&)>& body) {
    FirstFailure ff;
    body(ff);
    r_.add(name, ff.ok(), ff.where());
  }

 private:
  Report& r_;
};

inline void note(FirstFailure& ff, const std::string& label, const std::string& d) {
  if (!d.empty()) ff.note(label + " " + d);
}

}  // namespace detail

inline Report identity_suite(const OperatorContext& c, std::uint64_t seed = kDefaultSeed) {
  using detail::diff;
  using detail::note;
  using detail::outer;
  const int N = c.N, v0 = c.v0;
  const SccBundle& s = c.bundle;
  const Series1& g = s.g;
  const Series2& G = s.G;
  const Series2& F = s.F;
  const Series1 x = Series1::monomial(N, 1);
  const Matrix I = Matrix::identity(N);
  auto lbl = [](const std::string& k, int v) { return k + "=" + std::to_string(v) + ":"; };
  auto lbl2 = [](int a, int b) { return idx({a, b}) + ":"; };

  Report report;
  detail::SuiteBuilder sb(report);
  RationalSampler rs(seed);
  std::vector<Series1> rand1;
  std::vector<Series2> rand2;
  for (int i = 0; i < 3; ++i) rand1.push_back(rs.series1(N));
  for (int i = 0; i < 3; ++i) rand2.push_back(rs.series2(N));

  // ---- operator matrices on the monomial basis x^c ----
  auto x_matrix = [&](const std::function<Series1(const Series1&)>& op) {
    Matrix m(N, N);
    for (int col = 0; col < N; ++col) {
      Series1 out = op(Series1::monomial(N, col));
      for (int row = 0; row < N; ++row) m(row, col) = out[row];
    }
    return m;
  };
  // Also records whether the operator keeps pure-y inputs pure-y.
  bool y_stays_pure = true;
  auto y_matrix = [&](const std::function<Series2(const Series2&)>& op) {
    Matrix m(N, N);
    for (int col = 0; col < N; ++col) {
      Series2 out = op(Series2::monomial(N, 0, col));
      for (int row = 0; row < N; ++row) m(row, col) = out(0, row);
      for (int u = 1; u < N; ++u)
        for (int v = 0; v < N; ++v)
          if (!is_zero(out(u, v))) y_stays_pure = false;
    }
    return m;
  };
  std::vector<Matrix> Mx, My, Mt, Mty;
  for (int v = 0; v < N; ++v) {
    Mx.push_back(x_matrix([&](const Series1& h) { return c.partial_x(v, h); }));
    Mt.push_back(x_matrix([&](const Series1& h) { return c.tilde_partial_x(v, h); }));
    My.push_back(y_matrix([&](const Series2& h) { return c.partial_y(v, h); }));
    Mty.push_back(y_matrix([&](const Series2& h) { return c.tilde_partial_y(v, h); }));
  }
  auto apply1 = [&](const Matrix& m, const Series1& h) {
    Series1 r(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (!is_zero(m(i, j))) r[i] += m(i, j) * h[j];
    return r;
  };
  // (A (x) B) H = A H B^T on the coefficient grid.
  auto apply2 = [&](const Matrix& a, const Matrix& b, const Series2& h) {
    Series2 t(N), r(N);
    for (int u = 0; u < N; ++u)
      for (int k = 0; k < N; ++k)
        if (!is_zero(a(u, k)))
          for (int v = 0; v < N; ++v) t(u, v) += a(u, k) * h(k, v);
    for (int u = 0; u < N; ++u)
      for (int v = 0; v < N; ++v)
        for (int k = 0; k < N; ++k)
          if (!is_zero(b(v, k))) r(u, v) += t(u, k) * b(v, k);
    return r;
  };
  // Global operators as N^2 x N^2 matrices.
  std::vector<Matrix> Kd, Kt;
  for (int k = 0; k < N; ++k) {
    Matrix a(N * N, N * N), b(N * N, N * N);
    for (int l = 0; l <= k; ++l) {
      a = detail::add(a, kron(Mx[l], My[k - l]));
      b = detail::add(b, kron(Mt[l], Mty[k - l]));
    }
    Kd.push_back(std::move(a));
    Kt.push_back(std::move(b));
  }
  auto applyK = [&](const Matrix& k, const Series2& h) {
    Series2 r(N);
    for (int i = 0; i < N * N; ++i)
      for (int j = 0; j < N * N; ++j)
        if (!is_zero(k(i, j))) r(i / N, i % N) += k(i, j) * h(j / N, j % N);
    return r;
  };

  // ---- the direct operators agree with their matrices ----
  sb.check("operators_on_random_series", [&](FirstFailure& ff) {
    for (const auto& h : rand1)
      for (int v = 0; v < N; ++v) {
        note(ff, lbl("partial_x v", v), diff(c.partial_x(v, h), apply1(Mx[v], h)));
        note(ff, lbl("tilde_x v", v), diff(c.tilde_partial_x(v, h), apply1(Mt[v], h)));
      }
    for (const auto& h : rand2)
      for (int v = 0; v < N; ++v) {
        note(ff, lbl("partial_x2 v", v), diff(c.partial_x(v, h), apply2(Mx[v], I, h)));
        note(ff, lbl("partial_y v", v), diff(c.partial_y(v, h), apply2(I, My[v], h)));
        note(ff, lbl("tilde_y v", v), diff(c.tilde_partial_y(v, h), apply2(I, Mty[v], h)));
        note(ff, lbl("global k", v), diff(c.partial_global(v, h), applyK(Kd[v], h)));
        note(ff, lbl("tilde_global k", v), diff(c.tilde_partial_global(v, h), applyK(Kt[v], h)));
      }
  });
  sb.check("global_operators_on_monomials", [&](FirstFailure& ff) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N && a + b <= N; ++b) {
        Series2 m = Series2::monomial(N, a, b);
        for (int k = 0; k < N; ++k) {
          note(ff, lbl2(a, b) + lbl("k", k), diff(c.partial_global(k, m), applyK(Kd[k], m)));
          note(ff, lbl2(a, b) + lbl("tilde k", k), diff(c.tilde_partial_global(k, m), applyK(Kt[k], m)));
        }
      }
  });
  sb.check("y_operators_mirror_x", [&](FirstFailure& ff) {
    if (!y_stays_pure) ff.note("pure-y input gained x terms");
    for (int v = 0; v < N; ++v) {
      note(ff, lbl("partial v", v), diff(My[v], Mx[v]));
      note(ff, lbl("tilde v", v), diff(Mty[v], Mt[v]));
    }
  });

  // ---- the operators d_x^v ----
  sb.check("partial_x_zero_is_identity", [&](FirstFailure& ff) { note(ff, "", diff(Mx[0], I)); });
  sb.check("partial_x_vanishes_below_v0", [&](FirstFailure& ff) {
    for (int v = 1; v < v0 && v < N; ++v) note(ff, lbl("v", v), diff(Mx[v], Matrix(N, N)));
  });
  Matrix gD(N, N);  // h -> g h'
  for (int col = 1; col < N; ++col)
    for (int row = col - 1; row < N; ++row)
      if (row - col + 1 < N) gD(row, col) = Scalar(col) * g[row - col + 1];
  sb.check("partial_x_v0_is_g_derivation", [&](FirstFailure& ff) {
    if (v0 < N) note(ff, "", diff(Mx[v0], gD));
  });
  sb.check("partial_x_of_x_is_g_v", [&](FirstFailure& ff) {
    for (int v = 0; v < N; ++v) note(ff, lbl("v", v), diff(c.partial_x(v, x), G.slice_y(v)));
  });
  sb.check("partial_x_v0_of_f", [&](FirstFailure& ff) {
    if (v0 < N) note(ff, "", diff(c.partial_x(v0, s.f), s.f * (pow(s.f, v0) - Scalar(1))));
  });
  sb.check("partial_x_commute", [&](FirstFailure& ff) {
    for (int u = 1; u < N; ++u)
      for (int v = u + 1; v < N; ++v) note(ff, lbl2(u, v), diff(Mx[u] * Mx[v], Mx[v] * Mx[u]));
    for (const auto& h : rand1)
      for (int u = 1; u < N; ++u)
        for (int v = u + 1; v < N; ++v)
          note(ff, "random " + lbl2(u, v), diff(c.partial_x(u, c.partial_x(v, h)), c.partial_x(v, c.partial_x(u, h))));
  });
  sb.check("partial_y_pure_x_vanishes", [&](FirstFailure& ff) {
    for (const auto& h : rand1)
      for (int u = 1; u < N; ++u) note(ff, lbl("u", u), diff(c.partial_y(u, Series2::from_x(h)), Series2(N)));
  });
  sb.check("partial_xy_commute", [&](FirstFailure& ff) {
    for (const auto& h : rand2)
      for (int u = 1; u < N; ++u)
        for (int v = 1; v < N; ++v)
          note(ff, lbl2(v, u), diff(c.partial_x(v, c.partial_y(u, h)), c.partial_y(u, c.partial_x(v, h))));
  });
  sb.check("partial_global_zero_is_identity", [&](FirstFailure& ff) { note(ff, "", diff(Kd[0], Matrix::identity(N * N))); });

  // ---- G, the tensor and R ----
  std::vector<Series2> DxG, DG;
  for (int v = 0; v < N; ++v) {
    DxG.push_back(c.partial_x(v, G));
    DG.push_back(c.partial_global(v, G));
  }
  sb.check("p_is_coefficient_of_G_power", [&](FirstFailure& ff) {
    const auto gp = powers(G, N - 1);
    for (int w = 0; w < N; ++w)
      for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v)
          if (c.big(u, v, w) != gp[w](u, v)) ff.note(idx({u, v, w}));
  });
  sb.check("top_row_is_f_power", [&](FirstFailure& ff) {
    for (int w = 1; w < N; ++w) {
      Series1 fw = pow(s.f, w);
      for (int v = 0; v < N; ++v)
        if (c.big(w, v, w) != fw[v]) ff.note(idx({w, v, w}));
    }
  });
  sb.check("p_as_binomial", [&](FirstFailure& ff) {
    for (int w = 1; w < N; ++w)
      for (int d = 0; d + w < N; ++d)
        for (int v = 0; v < N; ++v) {
          if (v == 0 && d == 0) continue;
          Scalar sum = 0;
          for (int i = 1; i <= w; ++i) sum += binomial(w, i) * c.gbar_pow[i](d + i, v);
          if (c.big(d + w, v, w) != sum) ff.note(idx({d + w, v, w}));
        }
  });
  sb.check("sum_is_partial_x", [&](FirstFailure& ff) {
    for (const auto& l : rand1)
      for (int v = 0; v < N; ++v) {
        Series1 dl = c.partial_x(v, l);
        for (int u = 1; u < N; ++u) {
          Scalar sum = 0;
          for (int h = 1; h <= u; ++h) sum += c.big(u, v, h) * l[h];
          if (sum != dl[u]) ff.note(idx({u, v}));
        }
      }
  });
  sb.check("partial_x_symmetry_on_G", [&](FirstFailure& ff) {
    for (int u = 0; u < N; ++u)
      for (int v = u + 1; v < N; ++v) note(ff, lbl2(u, v), diff(DxG[u].slice_y(v), DxG[v].slice_y(u)));
  });
  sb.check("partial_x_on_g", [&](FirstFailure& ff) {
    if (v0 >= N) return;
    for (int d = 0; d < N; ++d) {
      Series1 dg = c.partial_x(d, g);
      note(ff, lbl("via v0 d", d), diff(dg, DxG[v0].slice_y(d)));
      note(ff, lbl("via d d", d), diff(dg, DxG[d].slice_y(v0)));
    }
  });
  sb.check("partial_y_v0_of_G", [&](FirstFailure& ff) {
    if (v0 < N) note(ff, "", diff(c.partial_y(v0, G), mul_y(DxG[v0], c.W - Scalar(1))));
  });
  sb.check("partial_x_v0_of_F", [&](FirstFailure& ff) {
    if (v0 < N) note(ff, "", diff(c.partial_x(v0, F), mul_x(c.partial_y(v0, F), c.W - Scalar(1))));
  });
  sb.check("g_y_G_y_relation", [&](FirstFailure& ff) {
    note(ff, "", diff(mul_y(derivative_y(G), g), mul_x(mul_y(derivative_x(G), c.W - Scalar(1)), g)));
  });
  std::vector<std::vector<std::vector<Scalar>>> Rt(N, std::vector<std::vector<Scalar>>(N, std::vector<Scalar>(N)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) Rt[i][j][k] = c.R(i, j, k);
  sb.check("R_equals_partial_global_G", [&](FirstFailure& ff) {
    for (int j = 0; j < N; ++j)
      for (int i = 1; i < N; ++i)
        for (int k = 1; k < N; ++k)
          if (DG[j](i, k) != Rt[i][j][k]) ff.note(idx({i, j, k}));
  });
  sb.check("partial_global_G_symmetry", [&](FirstFailure& ff) {
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) note(ff, lbl2(i, j), diff(DG[j].slice_y(i), DG[i].slice_y(j)));
  });
  sb.check("partial_global_G_ijk_symmetry", [&](FirstFailure& ff) {
    for (int i = 1; i < N; ++i)
      for (int j = 1; j < N; ++j)
        for (int k = 1; k < N; ++k)
          if (DG[k](i, j) != DG[j](i, k)) ff.note(idx({i, j, k}));
  });
  sb.check("braid_E_ijk", [&](FirstFailure& ff) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = j + 1; k < N; ++k)
          if (Rt[i][j][k] != Rt[i][k][j]) ff.note(idx({i, j, k}));
  });
  sb.check("R_symmetric_at_v0", [&](FirstFailure& ff) {
    for (int i = 0; i < N && v0 < N; ++i)
      for (int k = 0; k < N; ++k)
        if (Rt[i][v0][k] != Rt[i][k][v0]) ff.note(idx({i, v0, k}));
  });

  // ---- P and the tilde operators ----
  const auto Pv = [&](int v) { return c.Pseries.slice_y(v); };
  sb.check("P_recursion", [&](FirstFailure& ff) {
    note(ff, "P_0", diff(Pv(0), Series1(N)));
    if (N > 1) note(ff, "P_1", diff(Pv(1), g));
    for (int v = 1; v + 1 < N; ++v)
      note(ff, lbl("v", v), diff(Scalar(v + 1) * Pv(v + 1), g * derivative(Pv(v)) - Scalar(v) * Pv(v)));
  });
  sb.check("Gbar_power_expansion", [&](FirstFailure& ff) {
    for (int u = 1; u < N; ++u) {
      Series2 sum(N);
      for (int v = u; v < N; ++v) sum = sum + outer(c.p_pow[u].slice_y(v), c.fbar_pow[v]);
      note(ff, lbl("u", u), diff(c.gbar_pow[u], sum));
    }
  });
  sb.check("P_y_relation", [&](FirstFailure& ff) {
    Series2 lhs = mul_x(derivative_x(c.Pseries) + Series2::from_x(Series1::constant(N, 1)), g);
    Series2 py = derivative_y(c.Pseries);
    Series2 rhs = py + mul_y(py, x);
    note(ff, "", diff(lhs, rhs, N, N - 1));
  });
  sb.check("tilde_x_one_is_g_derivation", [&](FirstFailure& ff) {
    if (N > 1) note(ff, "", diff(Mt[1], gD));
  });
  sb.check("tilde_x_recursion", [&](FirstFailure& ff) {
    for (int v = 2; v < N; ++v)
      note(ff, lbl("v", v), diff(Scalar(v) * Mt[v], detail::add(Mt[1] * Mt[v - 1], Mt[v - 1], Scalar(-(v - 1)))));
    for (const auto& h : rand1)
      for (int v = 2; v < N; ++v) {
        Series1 prev = c.tilde_partial_x(v - 1, h);
        note(ff, "random " + lbl("v", v),
             diff(Scalar(v) * c.tilde_partial_x(v, h), c.tilde_partial_x(1, prev) - Scalar(v - 1) * prev));
      }
  });
  sb.check("tilde_x_commute", [&](FirstFailure& ff) {
    for (int u = 1; u < N; ++u)
      for (int v = u + 1; v < N; ++v) note(ff, lbl2(u, v), diff(Mt[u] * Mt[v], Mt[v] * Mt[u]));
  });
  sb.check("tilde_xy_commute", [&](FirstFailure& ff) {
    for (const auto& h : rand2)
      for (int u = 1; u < N; ++u)
        for (int v = 1; v < N; ++v)
          note(ff, lbl2(v, u),
               diff(c.tilde_partial_x(v, c.tilde_partial_y(u, h)), c.tilde_partial_y(u, c.tilde_partial_x(v, h))));
  });
  sb.check("tilde_x_symmetry_on_P", [&](FirstFailure& ff) {
    const Series2 Px = c.Pseries + Series2::from_x(x);
    std::vector<Series2> D;
    for (int v = 0; v < N; ++v) D.push_back(c.tilde_partial_x(v, Px));
    for (int u = 0; u < N; ++u)
      for (int v = u + 1; v < N; ++v) note(ff, lbl2(u, v), diff(D[u].slice_y(v), D[v].slice_y(u)));
  });
  auto falling = [&](const Matrix& k1, int v) {
    Matrix r = Matrix::identity(k1.rows());
    for (int i = 0; i < v; ++i) r = r * detail::add(k1, Matrix::identity(k1.rows()), Scalar(-i));
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j) r(i, j) /= factorial(v);
    return r;
  };
  sb.check("tilde_x_binomial", [&](FirstFailure& ff) {
    for (int v = 2; v <= 4 && v < N; ++v) note(ff, lbl("v", v), diff(Mt[v], falling(Mt[1], v)));
  });
  sb.check("tilde_global_binomial", [&](FirstFailure& ff) {
    for (int v = 2; v <= 4 && v < N; ++v) note(ff, lbl("v", v), diff(Kt[v], falling(Kt[1], v)));
    for (const auto& h : rand2)
      for (int v = 2; v <= 4 && v < N; ++v) {
        // C(D, v) h = (1/v) (D - (v-1)) C(D, v-1) h, starting from D h.
        Series2 acc = c.tilde_partial_global(1, h);
        for (int w = 2; w <= v; ++w)
          acc = scale(c.tilde_partial_global(1, acc) - Scalar(w - 1) * acc, Scalar(1, w));
        note(ff, "random " + lbl("v", v), diff(c.tilde_partial_global(v, h), acc));
      }
  });
  sb.check("tilde_global_recursion", [&](FirstFailure& ff) {
    for (int v = 2; v < N; ++v)
      note(ff, lbl("v", v), diff(Scalar(v) * Kt[v], detail::add(Kt[1] * Kt[v - 1], Kt[v - 1], Scalar(-(v - 1)))));
  });
  auto via_tilde = [&](const std::vector<Matrix>& tm, int v) {
    Matrix r(tm[0].rows(), tm[0].cols());
    for (int u = 0; u <= v; ++u)
      if (!is_zero(c.fbar_pow[u][v])) r = detail::add(r, tm[u], c.fbar_pow[u][v]);
    return r;
  };
  sb.check("partial_x_via_tilde", [&](FirstFailure& ff) {
    for (int v = 0; v < N; ++v) note(ff, lbl("v", v), diff(Mx[v], via_tilde(Mt, v)));
  });
  sb.check("partial_y_via_tilde", [&](FirstFailure& ff) {
    for (int v = 0; v < N; ++v) note(ff, lbl("v", v), diff(My[v], via_tilde(Mty, v)));
  });
  sb.check("partial_global_via_tilde", [&](FirstFailure& ff) {
    for (int v = 0; v < N; ++v) note(ff, lbl("v", v), diff(Kd[v], via_tilde(Kt, v)));
  });

  // ---- Q, Q1 and A ----
  const Series1 one = Series1::constant(N, 1);
  sb.check("Q1_ode", [&](FirstFailure& ff) {
    note(ff, "", diff(g * derivative(c.Q1), c.Q1));
    if (N > 1 && c.Q1[1] != 1) ff.note("linear term");
  });
  sb.check("Q1_inverse_A", [&](FirstFailure& ff) {
    note(ff, "A(Q1)", diff(compose(c.A, c.Q1), x));
    note(ff, "Q1(A)", diff(compose(c.Q1, c.A), x));
  });
  sb.check("Q1_power_vs_f", [&](FirstFailure& ff) {
    note(ff, "", diff(Scalar(v0) * pow(c.Q1, v0), one - mul_inverse(pow(s.f, v0))));
  });
  sb.check("Q1_binomial", [&](FirstFailure& ff) {
    Series1 coeff(N);
    for (int k = 1; k < N; ++k) coeff[k] = -generalized_binomial(Scalar(-v0), k);
    note(ff, "", diff(Scalar(v0) * pow(c.Q1, v0), compose(coeff, c.fbar)));
  });
  const Series1 fA = compose(s.f, c.A);
  sb.check("f_of_A_power", [&](FirstFailure& ff) {
    note(ff, "", diff(pow(fA, v0), mul_inverse(one - Scalar(v0) * pow(x, v0))));
  });
  sb.check("f_of_A_binomial", [&](FirstFailure& ff) {
    note(ff, "", diff(fA, binomial_series(Scalar(-1, v0), one - Scalar(v0) * pow(x, v0))));
  });
  sb.check("G_in_Q1", [&](FirstFailure& ff) {
    Series2 sum(N);
    auto qp = powers(c.Q1, N - 1);
    auto fp = powers(s.f, N - 1);
    for (int i = 1; i < N; ++i)
      if (!is_zero(c.A[i])) sum = sum + c.A[i] * outer(qp[i], fp[i]);
    note(ff, "", diff(G, sum));
  });
  sb.check("Q_i_is_a_i_Q1_power", [&](FirstFailure& ff) {
    for (int i = 1; i < N; ++i) note(ff, lbl("i", i), diff(c.Qseries.slice_y(i), scale(pow(c.Q1, i), c.A[i])));
  });
  sb.check("P_binomial_of_Q", [&](FirstFailure& ff) {
    for (int j = 1; j < N; ++j) {
      Series1 sum(N);
      for (int i = j; i < N; ++i) sum = sum + binomial(i, j) * c.Qseries.slice_y(i);
      note(ff, lbl("j", j), diff(Pv(j), sum));
    }
  });
  sb.check("Q_PDE", [&](FirstFailure& ff) {
    note(ff, "", diff(mul_x(derivative_x(c.Qseries), g), mul_y(derivative_y(c.Qseries), x)));
  });
  sb.check("Q1_powers_solve_ode", [&](FirstFailure& ff) {
    for (int k = 1; k < N; ++k) {
      Series1 q = pow(c.Q1, k);
      note(ff, lbl("k", k), diff(g * derivative(q), Scalar(k) * q));
      if (q.valuation() != k) ff.note(lbl("order k", k));
    }
  });

  // ---- F, S, U, T ----
  const Series2 q1y_f = outer(s.f, c.Q1);  // Q1(y) f(x)
  sb.check("F_is_A_of_Q1y_f", [&](FirstFailure& ff) { note(ff, "", diff(F, compose(c.A, q1y_f))); });
  const Series2 fbarF = compose(c.fbar, F);
  const Series2 z = outer(c.W, Scalar(v0) * pow(c.Q1, v0));  // v0 Q1(y)^{v0} f(x)^{v0}
  sb.check("S_property", [&](FirstFailure& ff) {
    note(ff, "", diff(Scalar(v0) * pow(c.Q1, v0), compose(c.S, c.fbar)));
  });
  sb.check("fbar_F_series", [&](FirstFailure& ff) {
    Series1 coeff(N);
    for (int k = 1; k < N; ++k) coeff[k] = generalized_binomial(Scalar(1, v0) + (k - 1), k);
    note(ff, "", diff(fbarF, compose(coeff, z)));
  });
  sb.check("U_property", [&](FirstFailure& ff) {
    // U(v0 Q1(y)^{v0}) = sum_k U_k(x) (v0 Q1(y)^{v0})^k.
    Series2 sum(N);
    auto w = powers(Scalar(v0) * pow(c.Q1, v0), N - 1);
    for (int k = 1; k < N; ++k) sum = sum + outer(c.U.slice_y(k), w[k]);
    note(ff, "", diff(fbarF, sum));
  });
  sb.check("T_property", [&](FirstFailure& ff) {
    Series2 sum(N);
    for (int k = 1; k < N; ++k) sum = sum + outer(c.T.slice_y(k), c.fbar_pow[k]);
    note(ff, "", diff(fbarF, sum));
  });
  sb.check("T_is_V_of_WS", [&](FirstFailure& ff) { note(ff, "", diff(c.T, compose(c.V, outer(c.W, c.S)))); });
  sb.check("T_derivative", [&](FirstFailure& ff) {
    Series2 ty = derivative_y(c.T);
    Series2 lhs = ty + mul_y(ty, x);
    Series2 rhs = c.tilde_partial_x(1, c.T) + mul_x(c.T + Series2::from_x(one), c.W);
    note(ff, "", diff(lhs, rhs, N, N - 1));
  });
  sb.check("T_low_coefficients", [&](FirstFailure& ff) {
    note(ff, "T_0", diff(c.T.slice_y(0), Series1(N)));
    for (int j = 1; j < N; ++j) note(ff, lbl("j", j), diff(c.t_pow[j].slice_y(j), pow(c.W, j)));
  });
  std::vector<Series2> tF, tyF, dyF, dF;
  for (int k = 0; k < N; ++k) {
    tF.push_back(c.tilde_partial_global(k, F));
    tyF.push_back(c.tilde_partial_y(k, F));
    dyF.push_back(c.partial_y(k, F));
    dF.push_back(c.partial_global(k, F));
  }
  sb.check("tilde_global_F_via_T", [&](FirstFailure& ff) {
    for (int k = 1; k < N; ++k) {
      Series2 sum(N);
      for (int h = 1; h <= k; ++h) sum = sum + mul_x(tyF[h], c.t_pow[h].slice_y(k));
      note(ff, lbl("k", k), diff(tF[k], sum));
    }
  });
  sb.check("main_F_identity", [&](FirstFailure& ff) {
    const auto fbF = powers(fbarF, N - 1);
    for (int j = 1; j < N; ++j) {
      Series2 lhs(N), rhs(N);
      for (int i = 1; i <= j; ++i) {
        if (!is_zero(c.fbar_pow[i][j])) lhs = lhs + c.fbar_pow[i][j] * tF[i];
        rhs = rhs + mul_x(tyF[i], fbF[i].slice_y(j));
      }
      note(ff, lbl("j", j), diff(lhs, rhs));
    }
  });
  sb.check("partial_global_F_via_F", [&](FirstFailure& ff) {
    for (int j = 1; j < N; ++j) {
      Series2 sum(N);
      for (int h = 1; h <= j; ++h) sum = sum + mul_x(dyF[h], c.f_pow[h].slice_y(j));
      note(ff, lbl("j", j), diff(dF[j], sum));
    }
  });
  sb.check("partial_global_G_via_F", [&](FirstFailure& ff) {
    for (int j = 1; j < N; ++j) {
      Series2 sum(N);
      for (int h = 1; h <= j; ++h) sum = sum + mul_y(DxG[h], c.f_pow[h].slice_y(j));
      note(ff, lbl("j", j), diff(DG[j], sum));
    }
  });
  sb.check("G_slices_via_F", [&](FirstFailure& ff) {
    for (int i = 1; i < N; ++i)
      for (int j = 1; j < N; ++j) {
        Series1 sum(N);
        for (int h = 1; h <= j; ++h) sum = sum + mul_y(DxG[h], c.f_pow[h].slice_y(j)).slice_y(i);
        note(ff, lbl2(i, j), diff(DG[i].slice_y(j), sum));
      }
  });
  sb.check("p_is_coefficient_of_F_power", [&](FirstFailure& ff) {
    for (int h = 0; h < N; ++h)
      for (int j = 0; j < N; ++j)
        for (int a = 0; a < N; ++a)
          if (c.big(j, a, h) != c.f_pow[h](a, j)) ff.note(idx({j, a, h}));
  });
  return report;
}

}  // namespace qcycle
