#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "qcycle/error.hpp"

namespace qcycle {

// Exact rationals. mpq_class keeps values canonical after every arithmetic
// operation; values built from strings are canonicalized in parse_scalar.
using Scalar = mpq_class;

inline bool is_zero(const Scalar& a) { return sgn(a) == 0; }

inline Scalar parse_scalar(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char ch : t)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    fail("ParseError", "not a rational: '" + std::string(text) + "'");
  if (num.front() == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) fail("ParseError", "zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

// Canonical text form: "a/b", or "a" when the denominator is 1.
inline std::string format_scalar(const Scalar& a) { return a.get_str(10); }

inline std::vector<Scalar> parse_scalar_list(std::string_view text) {
  std::vector<Scalar> out;
  std::string s(text);
  if (s.find_first_not_of(" \t") == std::string::npos) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.push_back(parse_scalar(std::string_view(s).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Scalar power(const Scalar& a, long e) {
  if (e < 0) {
    if (is_zero(a)) fail("DivisionByZero", "negative power of zero");
    return power(Scalar(1) / a, -e);
  }
  Scalar r = 1, b = a;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Scalar factorial(long k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return Scalar(r);
}

// Ordinary binomial C(n, k); zero outside 0 <= k <= n.
inline Scalar binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar(r);
}

// Generalized binomial C(alpha, k) = alpha(alpha-1)...(alpha-k+1)/k!.
inline Scalar generalized_binomial(const Scalar& alpha, long k) {
  if (k < 0) return 0;
  Scalar r = 1;
  for (long i = 0; i < k; ++i) r *= (alpha - i);
  return r / factorial(k);
}

// C(alpha, 0..count-1) by the falling-factorial recurrence, one division per step.
inline std::vector<Scalar> generalized_binomials(const Scalar& alpha, int count) {
  std::vector<Scalar> out;
  out.reserve(count);
  Scalar c = 1;
  for (int k = 0; k < count; ++k) {
    out.push_back(c);
    c = c * (alpha - k) / (k + 1);
  }
  return out;
}

}  // namespace qcycle
