#include "weylmod/scalar.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "weylmod/errors.hpp"

namespace weylmod {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ParamMonomial multiply(const ParamMonomial& a, const ParamMonomial& b) {
  ParamMonomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->name < j->name)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->name < i->name) {
      out.push_back(*j++);
    } else {
      if (i->invertible != j->invertible)
        throw ContextMismatch("parameter '" + i->name + "' declared with conflicting invertibility");
      int e = i->exp + j->exp;
      if (e != 0) out.push_back({i->name, e, i->invertible});
      ++i;
      ++j;
    }
  }
  return out;
}

std::string to_string(const ParamMonomial& m) {
  std::string s;
  for (const auto& f : m) {
    if (!s.empty()) s += "*";
    s += f.name;
    if (f.exp != 1) s += "^" + std::to_string(f.exp);
  }
  return s;
}

Scalar::Scalar(long v) {
  if (v != 0) terms_.emplace_back(ParamMonomial{}, Rational(v));
}

Scalar::Scalar(const Rational& q) {
  if (q != 0) {
    Rational c = q;
    c.canonicalize();
    terms_.emplace_back(ParamMonomial{}, c);
  }
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::param(const std::string& name, bool invertible, int exp) {
  if (exp < 0 && !invertible)
    throw NotInvertible("negative power of non-invertible parameter '" + name + "'");
  Scalar s;
  if (exp == 0) return Scalar(1);
  s.terms_.emplace_back(ParamMonomial{{name, exp, invertible}}, Rational(1));
  return s;
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
  Scalar s;
  s.terms_ = std::move(terms);
  s.canonicalize_();
  return s;
}

void Scalar::canonicalize_() {
  for (auto& [m, c] : terms_) {
    for (const auto& f : m)
      if (f.exp < 0 && !f.invertible)
        throw NotInvertible("negative power of non-invertible parameter '" + f.name + "'");
    c.canonicalize();
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.second == 0; });
  terms_ = std::move(merged);
}

bool Scalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty());
}

Rational Scalar::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!terms_[0].first.empty()) return Rational(0);
  return terms_[0].second;
}

bool Scalar::is_unit() const {
  if (terms_.size() != 1) return false;
  for (const auto& f : terms_[0].first)
    if (!f.invertible) return false;
  return true;
}

std::map<std::string, bool> Scalar::parameters() const {
  std::map<std::string, bool> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m) out[f.name] = f.invertible;
  return out;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

// Merge two sorted term lists, combining with sign.
std::vector<Scalar::Term> merge_terms(const std::vector<Scalar::Term>& a,
                                      const std::vector<Scalar::Term>& b, bool subtract) {
  std::vector<Scalar::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, subtract ? Rational(-j->second) : j->second);
      ++j;
    } else {
      Rational c = subtract ? Rational(i->second - j->second) : Rational(i->second + j->second);
      if (c != 0) out.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Scalar();
  if (b.is_constant()) {
    Scalar r = a;
    const Rational& k = b.terms_[0].second;
    for (auto& t : r.terms_) t.second *= k;
    return r;
  }
  if (a.is_constant()) return b * a;
  std::map<ParamMonomial, Rational> acc;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) acc[multiply(ma, mb)] += ca * cb;
  Scalar r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.emplace_back(m, c);
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (!is_unit()) throw NotInvertible("inverse of non-unit scalar '" + to_string() + "'");
  Scalar r;
  ParamMonomial m = terms_[0].first;
  for (auto& f : m) f.exp = -f.exp;
  r.terms_.emplace_back(std::move(m), Rational(1) / terms_[0].second);
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Scalar Scalar::substitute(const std::string& name, const Scalar& value) const {
  Scalar out;
  for (const auto& [m, c] : terms_) {
    ParamMonomial rest;
    int e = 0;
    for (const auto& f : m) {
      if (f.name == name) {
        e = f.exp;
      } else {
        rest.push_back(f);
      }
    }
    Scalar term = Scalar::from_terms({{rest, c}});
    if (e != 0) term *= value.pow(e);
    out += term;
  }
  return out;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  // Constant term (empty monomial, sorted first) is printed last.
  std::vector<const Term*> order;
  for (const auto& t : terms_)
    if (!t.first.empty()) order.push_back(&t);
  if (terms_[0].first.empty()) order.push_back(&terms_[0]);
  std::string s;
  bool first = true;
  for (const Term* t : order) {
    Rational c = t->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (t->first.empty()) {
      s += weylmod::to_string(c);
    } else if (c == 1) {
      s += weylmod::to_string(t->first);
    } else {
      s += weylmod::to_string(c) + "*" + weylmod::to_string(t->first);
    }
  }
  return s;
}

namespace {

using Dense = std::vector<int>;

struct DenseForm {
  std::vector<std::string> names;
  std::vector<bool> invertible;
  std::map<Dense, Rational> terms;
};

DenseForm to_dense(const Scalar& s, const std::vector<std::string>& names,
                   const std::vector<bool>& inv) {
  DenseForm d{names, inv, {}};
  for (const auto& [m, c] : s.terms()) {
    Dense e(names.size(), 0);
    for (const auto& f : m) {
      auto it = std::lower_bound(names.begin(), names.end(), f.name);
      e[static_cast<std::size_t>(it - names.begin())] = f.exp;
    }
    d.terms[e] = c;
  }
  return d;
}

Scalar from_dense(const std::map<Dense, Rational>& terms, const std::vector<std::string>& names,
                  const std::vector<bool>& inv) {
  std::vector<Scalar::Term> out;
  for (const auto& [e, c] : terms) {
    ParamMonomial m;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) m.push_back({names[i], e[i], inv[i]});
    out.emplace_back(std::move(m), c);
  }
  return Scalar::from_terms(std::move(out));
}

}  // namespace

std::optional<Scalar> divide_exact(const Scalar& num, const Scalar& den) {
  if (den.is_zero()) throw DomainError("division by zero scalar");
  if (num.is_zero()) return Scalar();
  if (den.is_constant()) return num * Scalar(Rational(1) / den.constant_value());

  auto params = num.parameters();
  for (const auto& [n, inv] : den.parameters()) params[n] = inv;
  std::vector<std::string> names;
  std::vector<bool> inv;
  for (const auto& [n, i] : params) {
    names.push_back(n);
    inv.push_back(i);
  }
  const std::size_t k = names.size();
  DenseForm a = to_dense(num, names, inv);
  DenseForm b = to_dense(den, names, inv);

  // Degree box the quotient must live in, per parameter.
  std::vector<int> lo(k), hi(k);
  for (std::size_t v = 0; v < k; ++v) {
    int amin = std::numeric_limits<int>::max(), amax = std::numeric_limits<int>::min();
    int bmin = amin, bmax = amax;
    for (const auto& [e, c] : a.terms) {
      amin = std::min(amin, e[v]);
      amax = std::max(amax, e[v]);
    }
    for (const auto& [e, c] : b.terms) {
      bmin = std::min(bmin, e[v]);
      bmax = std::max(bmax, e[v]);
    }
    lo[v] = amin - bmin;
    hi[v] = amax - bmax;
    if (lo[v] > hi[v]) return std::nullopt;
    if (!inv[v] && lo[v] < 0) lo[v] = 0;
  }

  const auto& [blead, bcoef] = *b.terms.rbegin();
  std::map<Dense, Rational> rem = a.terms;
  std::map<Dense, Rational> quot;
  while (!rem.empty()) {
    const auto& [rlead, rcoef] = *rem.rbegin();
    Dense q(k);
    for (std::size_t v = 0; v < k; ++v) {
      q[v] = rlead[v] - blead[v];
      if (q[v] < lo[v] || q[v] > hi[v]) return std::nullopt;
    }
    Rational qc = rcoef / bcoef;
    quot[q] = qc;
    for (const auto& [e, c] : b.terms) {
      Dense s(k);
      for (std::size_t v = 0; v < k; ++v) s[v] = e[v] + q[v];
      auto it = rem.find(s);
      Rational nv = (it == rem.end() ? Rational(0) : it->second) - qc * c;
      if (nv == 0) {
        if (it != rem.end()) rem.erase(it);
      } else if (it == rem.end()) {
        rem.emplace(std::move(s), nv);
      } else {
        it->second = nv;
      }
    }
  }
  return from_dense(quot, names, inv);
}

namespace {

void strip_content(std::span<Scalar> v) {
  Integer g = 0;
  Integer l = 1;
  std::map<std::string, bool> names;
  for (const auto& s : v) {
    for (const auto& [m, c] : s.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
      for (const auto& f : m) names[f.name] = f.invertible;
    }
  }
  if (g == 0) return;

  // Largest monomial dividing every term: per-parameter minimum exponent,
  // where a term lacking the parameter counts as exponent 0.
  ParamMonomial shift;
  for (const auto& [name, inv] : names) {
    int lo = 0;
    bool seen = false;
    for (const auto& s : v) {
      for (const auto& [m, c] : s.terms()) {
        int e = 0;
        for (const auto& f : m)
          if (f.name == name) e = f.exp;
        lo = seen ? std::min(lo, e) : e;
        seen = true;
      }
    }
    if (lo != 0) shift.push_back({name, -lo, inv});
  }

  const Rational factor(l, g);
  for (auto& s : v) {
    if (s.is_zero()) continue;
    std::vector<Scalar::Term> out;
    out.reserve(s.terms().size());
    for (const auto& [m, c] : s.terms()) out.emplace_back(multiply(m, shift), c * factor);
    s = Scalar::from_terms(std::move(out));
  }
}

// Coefficients of s as a polynomial in `name` (exponents may be negative
// for invertible parameters).
std::map<int, Scalar> split(const Scalar& s, const std::string& name) {
  std::map<int, std::vector<Scalar::Term>> parts;
  for (const auto& [m, c] : s.terms()) {
    int e = 0;
    ParamMonomial rest;
    for (const auto& f : m) {
      if (f.name == name) {
        e = f.exp;
      } else {
        rest.push_back(f);
      }
    }
    parts[e].emplace_back(std::move(rest), c);
  }
  std::map<int, Scalar> out;
  for (auto& [e, t] : parts) out.emplace(e, Scalar::from_terms(std::move(t)));
  return out;
}

Scalar join(const std::map<int, Scalar>& coeffs, const std::string& name, bool inv) {
  Scalar s;
  for (const auto& [e, c] : coeffs) s += c * Scalar::param(name, inv, e);
  return s;
}

// Rational and monomial content removed; sign fixed by the last term.
Scalar normalize(Scalar s) {
  if (s.is_zero()) return s;
  std::array<Scalar, 1> one{std::move(s)};
  strip_content(one);
  if (one[0].terms().back().second < 0) one[0] = -one[0];
  return one[0];
}

Scalar gcd_rec(const Scalar& a, const Scalar& b);

Scalar content_in(const Scalar& s, const std::string& name) {
  Scalar g;
  for (const auto& [e, c] : split(s, name)) {
    g = g.is_zero() ? normalize(c) : gcd_rec(g, c);
    if (g.is_constant()) return Scalar(1);
  }
  return g;
}

std::optional<std::pair<std::string, bool>> main_variable(const Scalar& a, const Scalar& b) {
  auto pa = a.parameters();
  for (const auto& [n, i] : b.parameters()) pa.emplace(n, i);
  if (pa.empty()) return std::nullopt;
  return *pa.begin();
}

Scalar gcd_rec(const Scalar& a0, const Scalar& b0) {
  Scalar a = normalize(a0), b = normalize(b0);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant()) return Scalar(1);
  if (a == b) return a;
  const auto [x, inv] = *main_variable(a, b);
  const auto ap = a.parameters(), bp = b.parameters();
  if (!ap.contains(x)) return gcd_rec(a, content_in(b, x));
  if (!bp.contains(x)) return gcd_rec(content_in(a, x), b);

  const Scalar ca = content_in(a, x), cb = content_in(b, x);
  const Scalar gc = gcd_rec(ca, cb);
  auto r0 = split(*divide_exact(a, ca), x);
  auto r1 = split(*divide_exact(b, cb), x);
  // After normalize the lowest exponent in x is 0 for both.
  if (r0.rbegin()->first < r1.rbegin()->first) std::swap(r0, r1);
  while (true) {
    // Pseudo-remainder of r0 by r1.
    const int db = r1.rbegin()->first;
    const Scalar lb = r1.rbegin()->second;
    while (!r0.empty() && r0.rbegin()->first >= db) {
      const int shift = r0.rbegin()->first - db;
      const Scalar lr = r0.rbegin()->second;
      std::map<int, Scalar> next;
      for (const auto& [e, c] : r0) next[e] += lb * c;
      for (const auto& [e, c] : r1) next[e + shift] -= lr * c;
      std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
      r0 = std::move(next);
    }
    if (r0.empty()) break;
    if (r0.rbegin()->first == 0) return gc;  // nonzero constant in x
    Scalar rem = join(r0, x, inv);
    rem = *divide_exact(rem, content_in(rem, x));
    r0 = std::move(r1);
    r1 = split(normalize(rem), x);
  }
  Scalar g = join(r1, x, inv);
  g = *divide_exact(g, content_in(g, x));
  return normalize(gc * g);
}

}  // namespace

Scalar gcd(const Scalar& a, const Scalar& b) { return gcd_rec(a, b); }

void make_primitive(std::span<Scalar> v) {
  strip_content(v);
  Scalar g;
  for (const auto& s : v) {
    if (s.is_zero()) continue;
    if (s.is_constant()) return;
    g = g.is_zero() ? normalize(s) : gcd_rec(g, s);
    if (g.is_constant()) return;
  }
  if (g.is_zero()) return;
  for (auto& s : v)
    if (!s.is_zero()) s = *divide_exact(s, g);
  strip_content(v);
}

Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer ipow(long base, long e) {
  if (e == 0) return 1;
  Integer r;
  Integer b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace weylmod
