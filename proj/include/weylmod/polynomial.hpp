#pragma once

#include <map>
#include <string>
#include <vector>

#include "weylmod/scalar.hpp"

namespace weylmod {

/// Polynomial in x_1..x_nvars with Scalar coefficients, sparse by exponent
/// vector. With nvars == 1 the variable prints as "x".
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int nvars = 1) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Scalar& c);
  static Polynomial monomial(const Exponents& e, const Scalar& c = Scalar(1));
  /// x_i - shift (i is 0-based).
  static Polynomial linear(int nvars, int i, const Scalar& shift);

  int nvars() const { return nvars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  /// Degree in variable i; -1 for the zero polynomial.
  int degree(int i) const;
  Scalar coefficient(const Exponents& e) const;
  Scalar constant_term() const;

  void add_term(const Exponents& e, const Scalar& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& k, const Polynomial& a);
  Polynomial operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial pow(int e) const;
  /// f(x_1 - s_1, ..., x_n - s_n) by binomial expansion.
  Polynomial shifted(const std::vector<Scalar>& s) const;
  /// Value at x = 0 in every variable.
  Scalar at_zero() const { return constant_term(); }

  /// Canonical text, terms in descending lexicographic exponent order.
  std::string to_string() const;

 private:
  int nvars_;
  std::map<Exponents, Scalar> terms_;
};

/// Name of variable i (0-based) for a polynomial ring with nvars variables.
std::string x_name(int nvars, int i);

}  // namespace weylmod
