#pragma once

#include <cstdint>
#include <random>

#include "qcycle/series.hpp"

namespace qcycle {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// Small random rationals num/den with |num| <= max_num, 1 <= den <= max_den.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, int max_num = 5, int max_den = 4)
      : rng_(seed), num_(-max_num, max_num), den_(1, max_den) {}

  Scalar operator()() {
    Scalar q(num_(rng_), den_(rng_));
    q.canonicalize();
    return q;
  }
  Scalar nonzero() {
    Scalar q;
    do q = (*this)();
    while (is_zero(q));
    return q;
  }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

  Series1 series1(int order) {
    Series1 s(order);
    for (int i = 0; i < order; ++i) s[i] = (*this)();
    return s;
  }
  Series2 series2(int order) {
    Series2 s(order);
    for (int u = 0; u < order; ++u)
      for (int v = 0; v < order; ++v) s(u, v) = (*this)();
    return s;
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> num_, den_;
};

}  // namespace qcycle
