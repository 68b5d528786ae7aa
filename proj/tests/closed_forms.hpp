#pragma once

// Closed-form tensors used as independent oracles; written directly from the
// binomial formulas, never from the series machinery.

#include <tuple>

#include "qcycle/tensor.hpp"

namespace qcycle::oracle {

// f = 1 + x^1 with all other parameters 0: p_{ij}^k = C(i-1,k-1) C(k,i-j) for k >= 1.
inline CoeffTensor vanishing_params_tensor(int n) {
  CoeffTensor t(n);
  t.at(0, 0, 0) = 1;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 1; k < n; ++k) t.at(i, j, k) = binomial(i - 1, k - 1) * binomial(k, i - j);
  return t;
}

// f = 1 + x + x^2 + ...: p_{ij}^k = C(j+k-1, k-1) when i = k > 0, else 0.
inline CoeffTensor all_ones_tensor(int n) {
  CoeffTensor t(n);
  t.at(0, 0, 0) = 1;
  for (int k = 1; k < n; ++k)
    for (int j = 0; j < n; ++j) t.at(k, j, k) = binomial(j + k - 1, k - 1);
  return t;
}

// p_{ij}^k = delta_{ik} delta_{j0}: the structure with no interaction.
inline CoeffTensor trivial_tensor(int n) {
  CoeffTensor t(n);
  for (int i = 0; i < n; ++i) t.at(i, 0, i) = 1;
  return t;
}

// A tensor whose only level-1 entries are the given (i, j, value) triples.
inline Level1 level1_with(int n, std::initializer_list<std::tuple<int, int, Scalar>> entries) {
  Level1 l = zero_level1(n);
  for (const auto& [i, j, v] : entries) l[i][j] = v;
  return l;
}

}  // namespace qcycle::oracle
