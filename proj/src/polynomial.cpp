#include "weylmod/polynomial.hpp"

#include <algorithm>

#include "weylmod/errors.hpp"

namespace weylmod {

std::string x_name(int nvars, int i) { return nvars == 1 ? "x" : "x" + std::to_string(i + 1); }

Polynomial Polynomial::constant(int nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::monomial(const Exponents& e, const Scalar& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::linear(int nvars, int i, const Scalar& shift) {
  Exponents e(static_cast<std::size_t>(nvars), 0);
  Polynomial p = constant(nvars, -shift);
  e[static_cast<std::size_t>(i)] = 1;
  p.add_term(e, Scalar(1));
  return p;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

int Polynomial::degree(int i) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(i)]);
  return d;
}

Scalar Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar Polynomial::constant_term() const {
  return coefficient(Exponents(static_cast<std::size_t>(nvars_), 0));
}

void Polynomial::add_term(const Exponents& e, const Scalar& c) {
  if (static_cast<int>(e.size()) != nvars_) throw ContextMismatch("polynomial: variable count mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw ContextMismatch("polynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw ContextMismatch("polynomial: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw ContextMismatch("polynomial: variable count mismatch");
  Polynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial operator*(const Scalar& k, const Polynomial& a) {
  Polynomial r(a.nvars_);
  if (k.is_zero()) return r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, k * c);
  return r;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial r = constant(nvars_, Scalar(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::shifted(const std::vector<Scalar>& s) const {
  if (static_cast<int>(s.size()) != nvars_) throw ContextMismatch("polynomial: shift arity mismatch");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    // prod_i (x_i - s_i)^{e_i} expanded with Pascal binomials
    Polynomial term = constant(nvars_, c);
    for (int i = 0; i < nvars_; ++i) {
      const int k = e[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      Polynomial factor(nvars_);
      Scalar neg_s = -s[static_cast<std::size_t>(i)];
      for (int j = 0; j <= k; ++j) {
        Exponents ex(static_cast<std::size_t>(nvars_), 0);
        ex[static_cast<std::size_t>(i)] = j;
        factor.add_term(ex, Scalar(binomial(k, j)) * neg_s.pow(k - j));
      }
      term = term * factor;
    }
    r += term;
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      int k = e[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += x_name(nvars_, i);
      if (k != 1) mono += "^" + std::to_string(k);
    }
    bool neg = false;
    std::string coeff;
    if (c.is_constant()) {
      Rational q = c.constant_value();
      neg = q < 0;
      if (neg) q = -q;
      coeff = weylmod::to_string(q);
    } else if (c.terms().size() == 1 && c.terms()[0].second < 0) {
      neg = true;
      coeff = (-c).to_string();
    } else {
      coeff = c.terms().size() == 1 ? c.to_string() : "(" + c.to_string() + ")";
    }
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      s += coeff;
    } else if (coeff == "1") {
      s += mono;
    } else {
      s += coeff + "*" + mono;
    }
  }
  return s;
}

}  // namespace weylmod
