#pragma once

#include <cstddef>
#include <vector>

#include "weylmod/scalar.hpp"

namespace weylmod {

/// Truncated power series c_0 + c_1 x + ... + c_order x^order. Coefficients
/// are those of x^k (not divided by k!).
class Series {
 public:
  explicit Series(std::size_t order) : coeffs_(order + 1) {}
  explicit Series(std::vector<Scalar> coeffs);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Scalar& operator[](std::size_t k) const { return coeffs_[k]; }
  Scalar& operator[](std::size_t k) { return coeffs_[k]; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Index of the first nonzero coefficient; order()+1 for the zero series.
  std::size_t valuation() const;

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  /// Product truncated to min(a.order(), b.order()).
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Scalar& k, const Series& a);
  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

  Series truncated(std::size_t order) const;

  /// e^{a x} to the given order: coefficients a^k / k!.
  static Series exp(const Scalar& a, std::size_t order);

 private:
  std::vector<Scalar> coeffs_;
};

/// q with q * den == num up to the truncation order. A common power x^v of
/// both operands is cancelled first, so the result has order
/// min(num.order(), den.order()) - v where v = den.valuation().
///
/// Throws DomainError if den is zero, if num vanishes to lower order than
/// den, or if the leading coefficient of den is not a unit.
Series series_quotient(const Series& num, const Series& den);

}  // namespace weylmod
