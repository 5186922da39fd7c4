#include "weylmod/series.hpp"

#include <algorithm>

#include "weylmod/errors.hpp"

namespace weylmod {

Series::Series(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.resize(1);
}

bool Series::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::size_t Series::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero()) return k;
  return coeffs_.size();
}

Series operator+(const Series& a, const Series& b) {
  Series r(std::min(a.order(), b.order()));
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

Series operator-(const Series& a, const Series& b) {
  Series r(std::min(a.order(), b.order()));
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

Series operator*(const Series& a, const Series& b) {
  Series r(std::min(a.order(), b.order()));
  for (std::size_t i = 0; i <= r.order(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= r.order(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series operator*(const Scalar& k, const Series& a) {
  Series r = a;
  for (auto& c : r.coeffs_) c = k * c;
  return r;
}

Series Series::truncated(std::size_t order) const {
  std::vector<Scalar> c(coeffs_.begin(),
                        coeffs_.begin() + static_cast<long>(std::min(order, this->order()) + 1));
  return Series(std::move(c));
}

Series Series::exp(const Scalar& a, std::size_t order) {
  Series r(order);
  Scalar power(1);
  for (std::size_t k = 0; k <= order; ++k) {
    r[k] = power * Scalar(Rational(1, factorial(static_cast<long>(k))));
    power *= a;
  }
  return r;
}

Series series_quotient(const Series& num, const Series& den) {
  if (den.is_zero()) throw DomainError("series quotient: denominator is zero");
  const std::size_t v = den.valuation();
  const std::size_t order = std::min(num.order(), den.order());
  if (v > order) throw DomainError("series quotient: denominator vanishes beyond truncation order");
  for (std::size_t k = 0; k < v; ++k)
    if (!num[k].is_zero())
      throw DomainError("series quotient: numerator vanishes to lower order than denominator");
  if (!den[v].is_unit())
    throw DomainError("series quotient: leading coefficient '" + den[v].to_string() +
                      "' is not a unit");
  const Scalar lead_inv = den[v].inverse();
  Series q(order - v);
  for (std::size_t k = 0; k <= q.order(); ++k) {
    Scalar acc = num[k + v];
    for (std::size_t i = 1; i <= k; ++i) acc -= den[v + i] * q[k - i];
    q[k] = acc * lead_inv;
  }
  return q;
}

}  // namespace weylmod
