#pragma once

#include <gmpxx.h>

#include <vector>

namespace vknot {

using Integer = mpz_class;
using Rational = mpq_class;

// gcd of absolute values; 0 for the zero vector.
inline Integer content(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const Integer& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline void make_primitive(std::vector<Integer>& v) {
  Integer g = content(v);
  if (g <= 1) return;
  for (Integer& x : v) x /= g;
}

inline bool lex_less(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

}  // namespace vknot
