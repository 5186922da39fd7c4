#include "weylmod/quasipoly.hpp"

#include <algorithm>

#include "weylmod/errors.hpp"

namespace weylmod {

namespace {

std::string exponent_key(const Scalar& a) { return a.is_zero() ? std::string() : a.to_string(); }

std::string exp_text(const Scalar& a) {
  if (a == Scalar(1)) return "exp(x)";
  if (a == Scalar(-1)) return "exp(-x)";
  if (a.terms().size() == 1) return "exp(" + a.to_string() + "*x)";
  return "exp((" + a.to_string() + ")*x)";
}

}  // namespace

Quasipolynomial Quasipolynomial::term(const Polynomial& p, const Scalar& a) {
  if (p.nvars() != 1) throw ContextMismatch("quasipolynomial coefficients must be univariate");
  Quasipolynomial q;
  q.add_(p, a);
  return q;
}

void Quasipolynomial::add_(const Polynomial& p, const Scalar& a) {
  if (p.is_zero()) return;
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& t) { return t.second == a; });
  if (it != terms_.end()) {
    it->first += p;
    if (it->first.is_zero()) terms_.erase(it);
    return;
  }
  const std::string key = exponent_key(a);
  auto pos = std::find_if(terms_.begin(), terms_.end(),
                          [&](const Term& t) { return key < exponent_key(t.second); });
  terms_.insert(pos, Term{p, a});
}

Scalar Quasipolynomial::at_zero() const {
  Scalar s;
  for (const auto& [p, a] : terms_) s += p.constant_term();
  return s;
}

Quasipolynomial& Quasipolynomial::operator+=(const Quasipolynomial& o) {
  for (const auto& [p, a] : o.terms_) add_(p, a);
  return *this;
}

Quasipolynomial operator-(const Quasipolynomial& a, const Quasipolynomial& b) {
  return a + Scalar(-1) * b;
}

Quasipolynomial operator*(const Scalar& k, const Quasipolynomial& a) {
  Quasipolynomial r;
  for (const auto& [p, e] : a.terms_) r.add_(k * p, e);
  return r;
}

Quasipolynomial operator*(const Quasipolynomial& a, const Quasipolynomial& b) {
  Quasipolynomial r;
  for (const auto& [pa, ea] : a.terms_)
    for (const auto& [pb, eb] : b.terms_) r.add_(pa * pb, ea + eb);
  return r;
}

bool operator==(const Quasipolynomial& a, const Quasipolynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (const auto& t : a.terms_) {
    auto it = std::find_if(b.terms_.begin(), b.terms_.end(), [&](const auto& u) { return u.second == t.second; });
    if (it == b.terms_.end() || !(it->first == t.first)) return false;
  }
  return true;
}

Series Quasipolynomial::series(std::size_t order) const {
  Series s(order);
  for (const auto& [p, a] : terms_) {
    const Series e = Series::exp(a, order);
    for (const auto& [ex, c] : p.terms()) {
      const auto k = static_cast<std::size_t>(ex[0]);
      for (std::size_t i = 0; i + k <= order; ++i) s[i + k] += c * e[i];
    }
  }
  return s;
}

std::string Quasipolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [p, a] : terms_) {
    std::string piece;
    if (a.is_zero()) {
      piece = p.to_string();
    } else if (p == Polynomial::constant(1, Scalar(1))) {
      piece = exp_text(a);
    } else if (p == Polynomial::constant(1, Scalar(-1))) {
      piece = "-" + exp_text(a);
    } else if (p.terms().size() == 1) {
      piece = p.to_string() + "*" + exp_text(a);
    } else {
      piece = "(" + p.to_string() + ")*" + exp_text(a);
    }
    if (out.empty()) {
      out = piece;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

}  // namespace weylmod
