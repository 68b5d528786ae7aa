#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "qcycle/report.hpp"
#include "qcycle/solution.hpp"
#include "qcycle/tensor.hpp"

namespace qcycle {

enum class ClassRow {
  p11_nonzero,
  involutive_delta_with_higher_param,
  involutive_delta_all_zero,
  involutive_p10_eq_1_nondelta,
  involutive_p10_root_of_unity,
  involutive_p10_not_root,
  noninv_both_roots,
  noninv_p10_not_root,
  noninv_d10_not_root,
};

inline const char* row_name(ClassRow r) {
  switch (r) {
    case ClassRow::p11_nonzero: return "p11_nonzero";
    case ClassRow::involutive_delta_with_higher_param: return "involutive_delta_with_higher_param";
    case ClassRow::involutive_delta_all_zero: return "involutive_delta_all_zero";
    case ClassRow::involutive_p10_eq_1_nondelta: return "involutive_p10_eq_1_nondelta";
    case ClassRow::involutive_p10_root_of_unity: return "involutive_p10_root_of_unity";
    case ClassRow::involutive_p10_not_root: return "involutive_p10_not_root";
    case ClassRow::noninv_both_roots: return "noninv_both_roots";
    case ClassRow::noninv_p10_not_root: return "noninv_p10_not_root";
    case ClassRow::noninv_d10_not_root: return "noninv_d10_not_root";
  }
  return "?";
}

struct ClassificationVerdict {
  ClassRow row;
  std::vector<std::string> references;  // results that govern the row
  std::string notes;
};

// Over Q the only roots of unity are 1 (order 1) and -1 (order 2); 0 means none.
inline int rational_root_order(const Scalar& a) {
  if (a == 1) return 1;
  if (a == -1) return 2;
  return 0;
}

// a^k = 1 for some 0 < k < n, checked directly.
inline bool root_of_unity_below(const Scalar& a, int n) {
  Scalar p = 1;
  for (int k = 1; k < n; ++k) {
    p *= a;
    if (p == 1) return true;
  }
  return false;
}

inline ClassificationVerdict classify(const QCycleStructure& s) {
  BraidReport br;
  try {
    br = check_braid_full(s);
  } catch (const Error& e) {
    fail("UnverifiedStructure", e.what());
  }
  if (!br.ok()) fail("UnverifiedStructure", "structure fails the braid equations");

  const int n = s.n();
  const Scalar &p10 = s.p(1, 0, 1), &d10 = s.d(1, 0, 1);
  auto order_note = [&](const char* which, const Scalar& a) {
    const int o = rational_root_order(a);
    return std::string(which) + " = " + format_scalar(a) +
           (o && o < n ? " has order " + std::to_string(o) : " is not a root of unity of order < n");
  };

  if (!is_zero(s.p(1, 1, 1)))
    return {ClassRow::p11_nonzero,
            {"p11 != 0 forces p = d and p_j0 = delta_1j", "rescaling by p11 gives a standard cycle coalgebra of degree 1"},
            "complete classification"};

  if (s.involutive()) {
    bool delta = true;
    for (int j = 0; j < n; ++j)
      if (s.p(j, 0, 1) != Scalar(j == 1 ? 1 : 0)) delta = false;
    if (delta) {
      bool higher = false;
      for (int j = 1; j < n; ++j)
        if (!is_zero(s.p(1, j, 1))) higher = true;
      if (higher)
        return {ClassRow::involutive_delta_with_higher_param,
                {"rescaling by a v0-th root of p_1v0 gives a standard cycle coalgebra of degree v0"},
                "complete classification; over Q the v0-th root may not exist"};
      return {ClassRow::involutive_delta_all_zero,
              {"p_i1 = 0 for all i (casi_scc_check)", "n = 3 family with free p22, p20 at p20 = 0"},
              "partial results; not claimed complete"};
    }
    if (p10 == 1)
      return {ClassRow::involutive_p10_eq_1_nondelta, {"n = 3 family with free p22, p20 at p20 != 0"},
              "examples only; further structures in this row are open"};
    if (root_of_unity_below(p10, n))
      return {ClassRow::involutive_p10_root_of_unity,
              {"vanishing below the order of p10 (nonunit_vanishing_check)", "n = 3 family with p10 = -1"},
              "partial results; " + order_note("p10", p10)};
    return {ClassRow::involutive_p10_not_root, {"family determined by p_i0 and d10 (build_nonroot_family)"},
            "complete classification; " + order_note("p10", p10)};
  }

  const bool p_root = root_of_unity_below(p10, n), d_root = root_of_unity_below(d10, n);
  if (p_root && d_root)
    return {ClassRow::noninv_both_roots,
            {"vanishing below the order of p10 and of d10, with p and d interchanged",
             "n = 3 family with p10 = 1, d10 = -1"},
            "partial results; " + order_note("p10", p10) + "; " + order_note("d10", d10)};
  if (!p_root)
    return {ClassRow::noninv_p10_not_root, {"family determined by p_i0 and d10 (build_nonroot_family)"},
            "complete classification; " + order_note("p10", p10)};
  return {ClassRow::noninv_d10_not_root,
          {"family determined by d_i0 and p10, with p and d interchanged"},
          "complete classification; " + order_note("d10", d10)};
}

struct NonRootFamilyInput {
  int n = 3;
  std::vector<Scalar> lambdas;  // p_{i0}^1 for i = 1 .. n-1
  Scalar mu;                    // d_{10}^1
};

// Only column j = 0 is nonzero. p comes from the lambdas by the product rule;
// d_{i0}^1 (lambda_1 - lambda_1^i) = sum_{h<i} p_{i0}^h d_{h0}^1 - sum_{h>=2} d_{i0}^h p_{h0}^1.
inline QCycleStructure build_nonroot_family(const NonRootFamilyInput& in) {
  const int n = in.n;
  if (n < 2) fail("InvalidDimension", "n must be at least 2");
  if (static_cast<int>(in.lambdas.size()) != n - 1)
    fail("ValidationError", "expected " + std::to_string(n - 1) + " lambdas");
  const Scalar& l1 = in.lambdas[0];
  if (is_zero(l1)) fail("ValidationError", "lambda_1 must be nonzero");
  if (is_zero(in.mu)) fail("ValidationError", "mu must be nonzero");
  if (root_of_unity_below(l1, n)) fail("RootOfUnityLambda", "lambda_1 = " + format_scalar(l1) + " is a root of unity of order < n");

  Level1 pl = zero_level1(n), dl = zero_level1(n);
  for (int i = 1; i < n; ++i) pl[i][0] = in.lambdas[i - 1];
  const CoeffTensor p = extend_from_level1(pl);
  dl[1][0] = in.mu;
  for (int i = 2; i < n; ++i) {
    const CoeffTensor d = extend_from_level1(dl);  // d_{i0}^h, h >= 2, only needs rows < i
    Scalar rhs = 0;
    for (int h = 1; h < i; ++h) rhs += p(i, 0, h) * dl[h][0];
    for (int h = 2; h <= i; ++h) rhs -= d(i, 0, h) * p(h, 0, 1);
    dl[i][0] = rhs / (l1 - p(i, 0, i));
  }
  return {p, extend_from_level1(dl)};
}

// Vanishing forced when p10 is not a root of unity of order < bound.
inline Report nonunit_vanishing_check(const QCycleStructure& s, int bound) {
  const Scalar& p10 = s.p(1, 0, 1);
  {
    Scalar pw = 1;
    for (int r = 1; r < bound; ++r) {
      pw *= p10;
      if (pw == 1) fail("PreconditionNotMet", "p10^" + std::to_string(r) + " = 1");
    }
  }
  const int n = s.n();
  Report rep;
  FirstFailure pz, dz, rec;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n && i + j <= bound; ++j)
      for (int k = 0; k < n; ++k) {
        if (!is_zero(s.p(i, j, k))) pz.note(idx({i, j, k}));
        if (!is_zero(s.d(i, j, k))) dz.note(idx({i, j, k}));
      }
  rep.add("p_vanishes_off_column0", pz.ok(), pz.where());
  rep.add("d_vanishes_off_column0", dz.ok(), dz.where());
  for (int i = 2; i <= bound && i < n; ++i) {
    Scalar lhs = s.d(i, 0, 1) * (p10 - s.p(i, 0, i)), rhs = 0;
    for (int h = 1; h < i; ++h) rhs += s.p(i, 0, h) * s.d(h, 0, 1);
    for (int h = 2; h <= i; ++h) rhs -= s.d(i, 0, h) * s.p(h, 0, 1);
    if (lhs != rhs) rec.note("i=" + std::to_string(i));
  }
  rep.add("d_column0_recursion", rec.ok(), rec.where());
  return rep;
}

inline Report casi_scc_check(const QCycleStructure& s) {
  const int n = s.n();
  const auto& p = s.p;
  if (!is_zero(p(1, 1, 1))) fail("PreconditionNotMet", "needs p11 = 0");
  if (!s.involutive()) fail("PreconditionNotMet", "needs p = d");
  for (int i = 0; i < n; ++i)
    if (p(i, 0, 1) != Scalar(i == 1 ? 1 : 0)) fail("PreconditionNotMet", "needs p_i0 = delta_1i, fails at i=" + std::to_string(i));
  for (int j = 1; j < n; ++j)
    if (!is_zero(p(1, j, 1))) fail("PreconditionNotMet", "needs p_1j = 0 for j > 0, fails at j=" + std::to_string(j));
  Report rep;
  FirstFailure ff;
  for (int i = 0; i < n; ++i)
    if (!is_zero(p(i, 1, 1))) ff.note(idx({i, 1, 1}));
  rep.add("column1_vanishes", ff.ok(), ff.where());
  return rep;
}

inline QCycleStructure normalize(const QCycleStructure& s, const Scalar& lambda) { return rescale(s, lambda); }

struct Fixture {
  std::string family;  // casi_scc, involutive, non_involutive
  std::string label;   // parameter point
  QCycleStructure s;
};

namespace detail {

inline CoeffTensor level1_tensor(int n, std::initializer_list<std::tuple<int, int, Scalar>> entries) {
  Level1 l = zero_level1(n);
  for (const auto& [i, j, v] : entries) l[i][j] = v;
  return extend_from_level1(l);
}

}  // namespace detail

// Three n = 3 families, three parameter points each. Every fixture is
// checked against the reduced braid equations before it is returned.
inline std::vector<Fixture> fixtures_n3() {
  std::vector<Fixture> out;
  const std::vector<std::pair<int, int>> casi{{0, 0}, {1, 0}, {2, 1}};
  for (const auto& [p22, p20] : casi)
    out.push_back({"casi_scc", "p22=" + std::to_string(p22) + ",p20=" + std::to_string(p20),
                   QCycleStructure(detail::level1_tensor(3, {{1, 0, 1}, {2, 0, p20}, {2, 2, p22}}))});
  const std::vector<std::pair<int, int>> inv{{0, 0}, {1, 2}, {2, 1}};
  for (const auto& [p12, p20] : inv) {
    const Scalar a(p12), b(p20);
    out.push_back({"involutive", "p12=" + std::to_string(p12) + ",p20=" + std::to_string(p20),
                   QCycleStructure(detail::level1_tensor(
                       3, {{1, 0, -1}, {1, 2, a}, {2, 0, b}, {2, 1, 2 * a}, {2, 2, Scalar(-5) * a * b / 2}}))});
  }
  for (int t : {0, 1, 2}) {
    const Scalar a(t);
    out.push_back({"non_involutive", "p12=" + std::to_string(t),
                   QCycleStructure(detail::level1_tensor(3, {{1, 0, 1}, {1, 2, a}}),
                                   detail::level1_tensor(3, {{1, 0, -1}, {1, 2, -a}}))});
  }
  for (const auto& f : out)
    if (!check_braid_reduced(f.s).ok())
      fail("InvariantViolation", "fixture " + f.family + " " + f.label + " fails the braid equations");
  return out;
}

}  // namespace qcycle
