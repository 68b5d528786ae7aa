#include <gtest/gtest.h>

#include "closed_forms.hpp"
#include "qcycle/random.hpp"
#include "qcycle/scc.hpp"
#include "qcycle/solution.hpp"

using namespace qcycle;
using namespace qcycle::oracle;

namespace {

// R(i,j,k) straight from the definition, no shared code with the checkers.
Scalar brute_R(const CoeffTensor& p, int i, int j, int k) {
  Scalar s = 0;
  for (int a = 0; a <= j; ++a)
    for (int h = 0; h <= i; ++h)
      for (int l = 0; l <= k; ++l) s += p(i, a, h) * p(k, j - a, l) * p(h, l, 1);
  return s;
}

std::vector<Scalar> random_tail(RationalSampler& rs, int n, int v0) {
  std::vector<Scalar> tail(n - 1 - v0);
  for (auto& a : tail) a = rs();
  return tail;
}

}  // namespace

TEST(Scc, InputValidation) {
  EXPECT_THROW(SccInput::make(1, 1, {}), Error);
  EXPECT_THROW(SccInput::make(4, 0, {1, 1}), Error);
  EXPECT_THROW(SccInput::make(4, 4, {}), Error);
  EXPECT_THROW(SccInput::make(4, 1, {1}), Error);
  EXPECT_EQ(SccInput::make(4, 2, {Scalar(2, 4)}).row(), (std::vector<Scalar>{1, 0, 1, Scalar(1, 2)}));
}

TEST(Scc, VanishingParametersMatchClosedForm) {
  const SccBundle b = build_scc(4, 1, {0, 0});
  EXPECT_EQ(b.tensor, vanishing_params_tensor(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i + j > 0) {
        EXPECT_EQ(b.tensor(i, j, 1), binomial(1, i - j));
      }
  EXPECT_EQ(b.tensor(3, 2, 2), 4);
  EXPECT_EQ(build_scc(6, 1, {0, 0, 0, 0}).tensor, vanishing_params_tensor(6));
}

TEST(Scc, AllOnesMatchClosedForm) {
  const SccBundle b = build_scc(4, 1, {1, 1});
  EXPECT_EQ(b.tensor, all_ones_tensor(4));
  EXPECT_EQ(b.tensor(2, 3, 2), 4);
  for (int i = 1; i < 4; ++i)
    for (int k = 1; k < 4; ++k)
      if (i != k) {
        for (int j = 0; j < 4; ++j) EXPECT_TRUE(is_zero(b.tensor(i, j, k)));
      }
  EXPECT_EQ(build_scc(6, 1, {1, 1, 1, 1}).tensor, all_ones_tensor(6));
}

TEST(Scc, DegreeTwoExample) {
  const SccBundle b = build_scc(5, 2, {0, 0});
  // g = x (1 + x^2)(2 + x^2) / 2 = x + 3/2 x^3 + 1/2 x^5.
  EXPECT_EQ(b.g, Series1(5, {0, 1, 0, Scalar(3, 2), 0}));
  EXPECT_EQ(build_scc(SccInput::make(5, 2, {0, 0}), 7).g, Series1(7, {0, 1, 0, Scalar(3, 2), 0, Scalar(1, 2), 0}));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k)
        EXPECT_EQ(brute_R(b.tensor, i, j, k), brute_R(b.tensor, i, k, j)) << idx({i, j, k});
}

TEST(Scc, GSeriesBasics) {
  RationalSampler rs(kDefaultSeed);
  for (int n = 2; n <= 6; ++n)
    for (int v0 = 1; v0 < n; ++v0) {
      const SccBundle b = build_scc(n, v0, random_tail(rs, n, v0));
      EXPECT_EQ(b.G.coefficient(1, 0), 1);
      for (int v = 1; v < v0; ++v) EXPECT_TRUE(b.G.slice_y(v).is_zero());
    }
}

TEST(Scc, InvariantSuitePassesEverywhere) {
  RationalSampler rs(kDefaultSeed + 1);
  for (int n = 2; n <= 6; ++n)
    for (int v0 = 1; v0 < n; ++v0)
      for (int t = 0; t < 3; ++t) {
        const SccBundle b = build_scc(SccInput::make(n, v0, random_tail(rs, n, v0)), n + 2);
        const Report r = scc_invariant_suite_v0(b);
        EXPECT_TRUE(r.ok()) << "n=" << n << " v0=" << v0;
        EXPECT_TRUE(r.passed("g_v_vanish_below_v0"));
        EXPECT_TRUE(r.passed("columns_below_v0_vanish"));
      }
}

TEST(Scc, BraidEquationsHold) {
  RationalSampler rs(kDefaultSeed + 2);
  for (int n = 2; n <= 5; ++n)
    for (int v0 = 1; v0 < n; ++v0) {
      const QCycleStructure s(build_scc(n, v0, random_tail(rs, n, v0)).tensor);
      EXPECT_TRUE(check_braid_reduced(s).ok()) << "n=" << n << " v0=" << v0;
      EXPECT_TRUE(check_braid_full(s).ok()) << "n=" << n << " v0=" << v0;
    }
}

TEST(Scc, CorruptedTensorFailsInvariantSuite) {
  RationalSampler rs(kDefaultSeed + 3);
  for (int v0 = 1; v0 < 5; ++v0) {
    SccBundle b = build_scc(5, v0, random_tail(rs, 5, v0));
    const int i = rs.uniform(0, 4), j = rs.uniform(0, 4), k = rs.uniform(0, 4);
    b.tensor.at(i, j, k) += 1;
    const bool morphism = is_coalgebra_morphism(b.tensor).ok;
    EXPECT_FALSE(morphism && scc_invariant_suite_v0(b).ok()) << idx({i, j, k});
  }
}

TEST(Scc, CorruptedLevel1EntryIsCaught) {
  SccBundle b = build_scc(5, 2, {1, 2});
  b.tensor.at(3, 2, 1) += 1;
  EXPECT_FALSE(scc_invariant_suite_v0(b).ok());
}

TEST(Scc, RowReconstructionMatchesClosedForms) {
  EXPECT_EQ(reconstruct_from_row(4, 1, {1, 1, 0, 0}), vanishing_params_tensor(4));
  EXPECT_EQ(reconstruct_from_row(4, 1, {1, 1, 1, 1}), all_ones_tensor(4));
  const SccInput in = SccInput::make(5, 2, {1, 1});
  EXPECT_EQ(reconstruct_from_row(5, 2, in.row()), build_scc(in).tensor);
}

TEST(Scc, RowReconstructionMatchesSeries) {
  RationalSampler rs(kDefaultSeed + 4);
  for (int n = 2; n <= 6; ++n)
    for (int v0 = 1; v0 < n; ++v0)
      for (int t = 0; t < 3; ++t) {
        const SccInput in = SccInput::make(n, v0, random_tail(rs, n, v0));
        EXPECT_EQ(reconstruct_from_row(n, v0, in.row()), build_scc(in).tensor) << "n=" << n << " v0=" << v0;
      }
}

TEST(Scc, RowReconstructionRejectsBadRows) {
  EXPECT_THROW(reconstruct_from_row(4, 1, {2, 1, 0, 0}), Error);
  EXPECT_THROW(reconstruct_from_row(4, 2, {1, 1, 1, 0}), Error);
  EXPECT_THROW(reconstruct_from_row(4, 1, {1, 1, 0}), Error);
  try {
    reconstruct_from_row(4, 1, {1, 0, 1, 0});
    FAIL() << "p11 = 0 must not be accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "DivisionByZero");
  }
}
