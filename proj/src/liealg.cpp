#include "weylmod/liealg.hpp"

#include <cstdlib>

#include "weylmod/errors.hpp"
#include "weylmod/linalg.hpp"

namespace weylmod {

namespace {

void require_same_ctx(const DiffOp& a, const DiffOp& b) {
  if (!(a.ctx() == b.ctx())) throw ContextMismatch("operands live in different algebras");
}

// Sum over the product of per-variable expansions of (t^a D^p)(t^b D^q).
void accumulate_product(const OpKey& x, const OpKey& y, const Scalar& coeff, DiffOp::Terms& out) {
  const std::size_t r = x.m.size();
  // Per variable: list of (D exponent, integer factor).
  std::vector<std::vector<std::pair<int, Integer>>> parts(r);
  for (std::size_t v = 0; v < r; ++v) {
    const int p = x.n[v];
    const int q = y.n[v];
    const int b = y.m[v];
    for (int i = 0; i <= p; ++i) {
      Integer f = binomial(p, i) * ipow(b, i);
      if (f != 0) parts[v].emplace_back(p + q - i, f);
    }
  }
  OpKey key;
  key.m.resize(r);
  key.n.resize(r);
  for (std::size_t v = 0; v < r; ++v) key.m[v] = x.m[v] + y.m[v];
  std::vector<std::size_t> idx(r, 0);
  for (const auto& p : parts)
    if (p.empty()) return;
  while (true) {
    Integer f = 1;
    for (std::size_t v = 0; v < r; ++v) {
      key.n[v] = parts[v][idx[v]].first;
      f *= parts[v][idx[v]].second;
    }
    Scalar c = coeff * Scalar(f);
    auto [it, inserted] = out.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
    std::size_t v = 0;
    while (v < r && ++idx[v] == parts[v].size()) idx[v++] = 0;
    if (v == r) break;
  }
}

DiffOp::Terms product_terms(const DiffOp::Terms& a, const DiffOp::Terms& b) {
  DiffOp::Terms out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) accumulate_product(ka, kb, ca * cb, out);
  return out;
}

// Cocycle on rank-1 basis monomials.
Rational phi_basis(int a, int p, int b, int q) {
  if (a == 0 || a + b != 0) return 0;
  if (a < 0) return -phi_basis(b, q, a, p);
  Integer sum = 0;
  for (int i = 1; i <= a; ++i) sum += ipow(a - i, p) * ipow(i, q);
  Rational r(sum, 2);
  r.canonicalize();
  return (p % 2 == 0) ? Rational(-r) : r;  // (-1)^{p+1}
}

}  // namespace

DiffOp assoc_product(const DiffOp& a, const DiffOp& b) {
  require_same_ctx(a, b);
  if (a.ctx().central())
    throw ContextMismatch("the associative product is defined on the non-central algebra only");
  DiffOp out(a.ctx());
  for (const auto& [k, c] : product_terms(a.terms(), b.terms())) out.add_term(k, c);
  return out;
}

DiffOp bracket(const DiffOp& a, const DiffOp& b) {
  require_same_ctx(a, b);
  DiffOp out(a.ctx());
  for (const auto& [k, c] : product_terms(a.terms(), b.terms())) out.add_term(k, c);
  for (const auto& [k, c] : product_terms(b.terms(), a.terms())) out.add_term(k, -c);
  if (a.ctx().central()) out.add_central(cocycle_phi(a, b));
  return out;
}

Scalar cocycle_phi(const DiffOp& a, const DiffOp& b) {
  if (a.ctx().rank() != 1 || b.ctx().rank() != 1)
    throw ContextMismatch("the cocycle is defined for rank 1 only");
  Scalar out;
  for (const auto& [ka, ca] : a.terms()) {
    if (ka.m[0] == 0) continue;
    for (const auto& [kb, cb] : b.terms()) {
      Rational v = phi_basis(ka.m[0], ka.n[0], kb.m[0], kb.n[0]);
      if (v != 0) out += Scalar(v) * ca * cb;
    }
  }
  return out;
}

std::map<std::vector<int>, DiffOp> grade_components(const DiffOp& a) {
  std::map<std::vector<int>, DiffOp> out;
  for (const auto& [k, c] : a.terms()) {
    auto [it, inserted] = out.try_emplace(k.m, a.ctx());
    it->second.add_term(k, c);
  }
  if (!a.central_coeff().is_zero()) {
    std::vector<int> zero(static_cast<std::size_t>(a.ctx().rank()), 0);
    auto [it, inserted] = out.try_emplace(zero, a.ctx());
    it->second.add_central(a.central_coeff());
  }
  return out;
}

namespace {

bool within(const OpKey& k, const SpanBounds& b) {
  for (int m : k.m)
    if (std::abs(m) > b.max_m) return false;
  for (int n : k.n)
    if (n > b.max_n) return false;
  return true;
}

bool within(const DiffOp& d, const SpanBounds& b) {
  for (const auto& [k, c] : d.terms())
    if (!within(k, b)) return false;
  return true;
}

Echelon<OpKey>::Vector as_vector(const DiffOp& d) {
  Echelon<OpKey>::Vector v;
  for (const auto& [k, c] : d.terms()) v.emplace(k, c);
  return v;
}

// All keys with |m_i| <= M, n_i <= N in lexicographic order.
std::vector<OpKey> bounded_keys(int rank, const SpanBounds& b) {
  std::vector<OpKey> keys;
  OpKey k{std::vector<int>(static_cast<std::size_t>(rank), -b.max_m),
          std::vector<int>(static_cast<std::size_t>(rank), 0)};
  while (true) {
    keys.push_back(k);
    std::size_t v = 0;
    const std::size_t r = static_cast<std::size_t>(rank);
    while (v < 2 * r) {
      int& slot = v < r ? k.n[r - 1 - v] : k.m[2 * r - 1 - v];
      int hi = v < r ? b.max_n : b.max_m;
      int lo = v < r ? 0 : -b.max_m;
      if (slot < hi) {
        ++slot;
        break;
      }
      slot = lo;
      ++v;
    }
    if (v == 2 * r) break;
  }
  return keys;
}

}  // namespace

SpanProbeResult generated_span_probe(const std::vector<DiffOp>& generators, const SpanBounds& bounds) {
  if (generators.empty()) throw DomainError("span probe needs at least one generator");
  const int rank = generators.front().ctx().rank();

  Echelon<OpKey> span;
  std::vector<DiffOp> basis;
  for (const auto& g : generators) {
    if (g.ctx().rank() != rank) throw ContextMismatch("generators of different rank");
    DiffOp h = g.without_central();
    if (span.insert(as_vector(h))) basis.push_back(h);
  }

  SpanProbeResult res;
  std::size_t frontier_begin = 0;
  for (int round = 0; round < bounds.depth; ++round) {
    const std::size_t end = basis.size();
    std::vector<DiffOp> fresh;
    for (std::size_t i = 0; i < end; ++i) {
      for (std::size_t j = std::max(frontier_begin, i + 1); j < end; ++j) {
        DiffOp e = bracket(basis[i], basis[j]);
        if (e.is_zero() || !within(e, bounds)) continue;
        if (span.insert(as_vector(e))) fresh.push_back(std::move(e));
      }
    }
    ++res.rounds;
    if (fresh.empty()) break;
    frontier_begin = end;
    for (auto& f : fresh) basis.push_back(std::move(f));
  }

  for (const auto& k : bounded_keys(rank, bounds)) {
    Echelon<OpKey>::Vector unit{{k, Scalar(1)}};
    (span.contains(unit) ? res.reached : res.missing).insert(k);
  }
  res.span_dim = span.rank();
  return res;
}

}  // namespace weylmod
