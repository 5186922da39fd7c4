#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace weylmod {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);

/// One factor name^exp of a parameter monomial. The invertible flag travels
/// with the factor so that negative powers can be validated without a
/// global parameter table.
struct ParamPower {
  std::string name;
  int exp = 0;
  bool invertible = false;

  friend bool operator==(const ParamPower& a, const ParamPower& b) {
    return a.name == b.name && a.exp == b.exp;
  }
  friend auto operator<=>(const ParamPower& a, const ParamPower& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.exp <=> b.exp;
  }
};

/// Product of parameter powers, sorted by name, no zero exponents.
using ParamMonomial = std::vector<ParamPower>;

ParamMonomial multiply(const ParamMonomial& a, const ParamMonomial& b);
std::string to_string(const ParamMonomial& m);

/// Element of Q[p_1^{(+-)1}, ..., p_k^{(+-)1}]: a Laurent polynomial over the
/// rationals in formal parameters. Parameters declared invertible may carry
/// negative exponents; the others may not.
///
/// Terms are kept sorted by monomial with no zero coefficients, so equal
/// values always have identical representations and operator== is exact.
class Scalar {
 public:
  using Term = std::pair<ParamMonomial, Rational>;

  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT
  Scalar(const Rational& q);  // NOLINT
  Scalar(const Integer& z) : Scalar(Rational(z)) {}  // NOLINT

  static Scalar rational(long num, long den);
  /// name^exp; throws NotInvertible for exp < 0 on a non-invertible name.
  static Scalar param(const std::string& name, bool invertible, int exp = 1);
  static Scalar from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Rational value; only meaningful when is_constant().
  Rational constant_value() const;
  /// Nonzero rational times a monomial in invertible parameters.
  bool is_unit() const;
  /// Set of parameter names occurring, with their invertible flags.
  std::map<std::string, bool> parameters() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Multiplicative inverse of a unit; throws NotInvertible otherwise.
  Scalar inverse() const;
  /// Integer power; negative exponents require a unit.
  Scalar pow(long e) const;
  /// Replace every occurrence of `name` by `value`.
  Scalar substitute(const std::string& name, const Scalar& value) const;

  /// Canonical text: terms in monomial order with the constant term last,
  /// e.g. "3/2*a1*lambda^-2 - 1". Multi-term values are not parenthesised.
  std::string to_string() const;

 private:
  void canonicalize_();
  std::vector<Term> terms_;
};

/// Exact quotient num/den in the Laurent ring, or nullopt when den does not
/// divide num. Throws DomainError when den is zero.
std::optional<Scalar> divide_exact(const Scalar& num, const Scalar& den);

/// Greatest common divisor up to units and monomials: the result is
/// normalized (primitive integer coefficients, no monomial content). Zero
/// only when both inputs are zero.
Scalar gcd(const Scalar& a, const Scalar& b);

/// Divides a vector by its rational content, by the largest parameter
/// monomial dividing every entry and by the polynomial gcd of its entries.
/// The vector spans the same line over the fraction field afterwards.
void make_primitive(std::span<Scalar> v);

Integer binomial(long n, long k);
Integer factorial(long n);
/// base^e with the convention 0^0 = 1.
Integer ipow(long base, long e);

}  // namespace weylmod
