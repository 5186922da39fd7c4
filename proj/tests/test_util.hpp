#pragma once

#include <random>

#include "weylmod/scalar.hpp"

namespace weylmod::testing {

inline Scalar lam() { return Scalar::param("lambda", true); }
inline Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

/// Small random Laurent polynomial in lambda (invertible) and a (not).
inline Scalar random_scalar(std::mt19937& rng, int max_terms = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> lexp(-2, 2);
  std::uniform_int_distribution<int> aexp(0, 2);
  Scalar s;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    s += Scalar::rational(coef(rng), den(rng)) * Scalar::param("lambda", true, lexp(rng)) *
         Scalar::param("a", false, aexp(rng));
  return s;
}

}  // namespace weylmod::testing
