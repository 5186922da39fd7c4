#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weylmod/polynomial.hpp"
#include "weylmod/series.hpp"

namespace weylmod {

/// sum_i p_i(x) e^{a_i x}. Terms with equal exponents are merged on insertion
/// and zero polynomials dropped; beyond that, distinctness of symbolic
/// exponents is the caller's business.
class Quasipolynomial {
 public:
  using Term = std::pair<Polynomial, Scalar>;  // (p_i, a_i)

  Quasipolynomial() = default;

  /// p(x) e^{a x}; p must be univariate.
  static Quasipolynomial term(const Polynomial& p, const Scalar& a = Scalar());

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar at_zero() const;

  Quasipolynomial& operator+=(const Quasipolynomial& o);
  friend Quasipolynomial operator+(Quasipolynomial a, const Quasipolynomial& b) { return a += b; }
  friend Quasipolynomial operator-(const Quasipolynomial& a, const Quasipolynomial& b);
  friend Quasipolynomial operator*(const Scalar& k, const Quasipolynomial& a);
  /// Product; exponents add.
  friend Quasipolynomial operator*(const Quasipolynomial& a, const Quasipolynomial& b);
  friend bool operator==(const Quasipolynomial& a, const Quasipolynomial& b);

  /// Taylor coefficients at 0 up to x^order (coefficients of x^k, not x^k/k!).
  Series series(std::size_t order) const;

  /// e.g. "(x^2 + 1)*exp(a*x) - x^2 - 1"; the exponent-zero term prints
  /// without exp and comes first.
  std::string to_string() const;

 private:
  void add_(const Polynomial& p, const Scalar& a);

  std::vector<Term> terms_;
};

}  // namespace weylmod
