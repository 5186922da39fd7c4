#include "weylmod/tensor.hpp"

#include <algorithm>
#include <set>

#include "weylmod/errors.hpp"
#include "weylmod/linalg.hpp"

namespace weylmod {

TensorSpec::TensorSpec(OmegaSpec omega_, TruncVerma hw_) : omega(std::move(omega_)), hw(std::move(hw_)) {
  if (omega.rank != 1) throw DomainError("tensor modules need a rank-1 Omega side");
  if (omega.family == Family::Dnu) throw DomainError("tensor modules over D_nu are not supported");
}

bool TensorOrder::operator()(const TensorKey& a, const TensorKey& b) const {
  if (a.first != b.first) return a.first < b.first;
  return PbwOrder()(a.second, b.second);
}

TensorElem::TensorElem(TensorTerms terms) {
  for (auto& [k, c] : terms) add_term(k, c);
}

TensorElem TensorElem::monomial(int j, const PbwMonomial& b, const Scalar& c) {
  TensorElem w;
  w.add_term({j, b}, c);
  return w;
}

TensorElem TensorElem::pure(const Polynomial& f, const VermaElem& v) {
  if (f.nvars() != 1) throw ContextMismatch("tensor elements need a univariate Omega part");
  TensorElem w;
  for (const auto& [e, a] : f.terms())
    for (const auto& [b, c] : v.terms()) w.add_term({e[0], b}, a * c);
  return w;
}

int TensorElem::top_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.first; }

VermaElem TensorElem::component(int j) const {
  VermaElem v;
  for (const auto& [k, c] : terms_)
    if (k.first == j) v.add_term(k.second, c);
  return v;
}

Scalar TensorElem::coefficient(const TensorKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar() : it->second;
}

void TensorElem::add_term(const TensorKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  if (k.first < 0) throw DomainError("x-exponent must be non-negative");
  for (const auto& [j, n] : k.second)
    if (j < 1 || n < 0) throw DomainError("invalid PBW generator in tensor element");
  if (!std::is_sorted(k.second.begin(), k.second.end())) throw DomainError("PBW monomial must be sorted");
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TensorElem& TensorElem::operator+=(const TensorElem& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TensorElem& TensorElem::operator-=(const TensorElem& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

TensorElem operator*(const Scalar& k, const TensorElem& a) {
  TensorElem r;
  if (k.is_zero()) return r;
  for (const auto& [key, c] : a.terms_) r.add_term(key, k * c);
  return r;
}

std::string TensorElem::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    bool neg = false;
    std::string coeff;
    if (c.is_constant()) {
      Rational q = c.constant_value();
      neg = q < 0;
      coeff = weylmod::to_string(neg ? Rational(-q) : q);
    } else if (c.terms().size() == 1) {
      neg = c.terms()[0].second < 0;
      coeff = (neg ? -c : c).to_string();
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (coeff != "1") s += coeff + "*";
    if (k.first == 1) s += "x*";
    if (k.first > 1) s += "x^" + std::to_string(k.first) + "*";
    s += weylmod::to_string(k.second);
  }
  return s;
}

TensorAction::TensorAction(const TensorSpec& spec) : spec_(spec), omega_(spec.omega), hw_(spec.hw.spec()) {}

TensorElem TensorAction::act(const DiffOp& op, const TensorElem& w) {
  if (op.ctx().rank() != 1) throw ContextMismatch("tensor action needs a rank-1 operator");
  TensorElem out;
  for (const auto& [k, c] : op.terms())
    for (const auto& [key, a] : w.terms()) {
      const Scalar ca = c * a;
      for (const auto& [e, c2] : omega_.mono(k, {key.first}).terms()) out.add_term({e[0], key.second}, ca * c2);
      for (const auto& [b, c3] : hw_.act_basis(k, key.second).terms()) out.add_term({key.first, b}, ca * c3);
    }
  if (!op.central_coeff().is_zero()) out += (op.central_coeff() * spec_.hw.spec().c()) * w;
  return out;
}

TensorElem act_tensor(const TensorSpec& spec, const DiffOp& op, const TensorElem& w) {
  TensorAction action(spec);
  TensorElem out = action.act(op, w);
  for (const auto& [k, c] : out.terms())
    if (level(k.second) > spec.hw.max_level())
      throw LevelOverflow("result reaches level " + std::to_string(level(k.second)) + " above the bound " +
                          std::to_string(spec.hw.max_level()));
  return out;
}

int vanishing_bound(const VermaElem& v) {
  if (v.is_zero()) throw DomainError("K(v) is undefined for v = 0");
  return v.max_level() + 1;
}

namespace {

const AlgebraCtx DHAT = AlgebraCtx::centrally_extended();

void require_d_family(const TensorSpec& spec) {
  if (spec.omega.family != Family::D) throw DomainError("the Vandermonde reduction needs the D family");
}

int max_vanishing_bound(const TensorElem& w) {
  int k = 1;
  for (int j = 0; j <= w.top_degree(); ++j) {
    VermaElem v = w.component(j);
    if (!v.is_zero()) k = std::max(k, vanishing_bound(v));
  }
  return k;
}

Scalar beta_inverse(const TensorSpec& spec) { return Scalar(static_cast<long>(spec.omega.beta_sign())); }

}  // namespace

std::vector<TensorElem> vandermonde_coefficients(const TensorSpec& spec, const TensorElem& w) {
  require_d_family(spec);
  if (w.is_zero()) throw DomainError("cannot reduce w = 0");
  const int s = w.top_degree();
  const int K = max_vanishing_bound(w);
  const auto nodes = static_cast<std::size_t>(s + 2);
  const Scalar lam = spec.omega.lambda[0];

  TensorAction action(spec);
  std::vector<TensorElem> images;
  std::set<TensorKey, TensorOrder> coords;
  for (std::size_t k = 0; k < nodes; ++k) {
    const int m = K + static_cast<int>(k);
    images.push_back(action.act(DiffOp::basis(DHAT, m, 1, lam.pow(-m)), w));
    for (const auto& [key, c] : images.back().terms()) coords.insert(key);
  }
  const std::vector<TensorKey> cols(coords.begin(), coords.end());

  Matrix vander(nodes, nodes);
  Matrix rhs(nodes, cols.size());
  for (std::size_t k = 0; k < nodes; ++k) {
    Integer p = 1;
    for (std::size_t i = 0; i < nodes; ++i) {
      vander(k, i) = Scalar(p);
      p *= K + static_cast<long>(k);
    }
    for (std::size_t c = 0; c < cols.size(); ++c) rhs(k, c) = images[k].coefficient(cols[c]);
  }
  LinearSolution sol = solve_linear(vander, rhs);
  std::vector<TensorElem> out(nodes);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const FracVector& x = *sol.particular[c];
    const Scalar inv = x.den.inverse();
    for (std::size_t i = 0; i < nodes; ++i) out[i].add_term(cols[c], x.num[i] * inv);
  }
  return out;
}

TensorElem vandermonde_reduce(const TensorSpec& spec, const TensorElem& w) {
  require_d_family(spec);
  if (w.is_zero()) throw DomainError("cannot reduce w = 0");
  const int s = w.top_degree();
  if (s == 0) return w;
  const auto coeffs = vandermonde_coefficients(spec, w);
  if (spec.omega.epsilon == 1) return coeffs[static_cast<std::size_t>(s + 1)];
  const TensorElem& u = coeffs[static_cast<std::size_t>(s)];
  if (u.is_zero()) return u;
  const int K = max_vanishing_bound(u);
  const Scalar lam = spec.omega.lambda[0];
  const Scalar b = beta_inverse(spec);
  DiffOp diff = DiffOp::basis(DHAT, K, 0, b * lam.pow(-K)) - DiffOp::basis(DHAT, K + 1, 0, b * lam.pow(-K - 1));
  return TensorAction(spec).act(diff, u);
}

std::vector<DiffOp> tensor_generators(const TensorSpec& spec, int gen_m, int gen_n) {
  if (spec.omega.family != Family::D) {
    std::vector<DiffOp> gens;
    for (const auto& g : family_generators(spec.omega, gen_m, std::min(gen_n, 1))) gens.push_back(g.in_context(DHAT));
    return gens;
  }
  std::vector<DiffOp> gens;
  for (int m = -gen_m; m <= gen_m; ++m)
    for (int n = 0; n <= gen_n; ++n) gens.push_back(DiffOp::basis(DHAT, m, n));
  return gens;
}

std::vector<TensorKey> tensor_basis(const TensorSpec& spec, int max_deg) {
  std::vector<TensorKey> out;
  for (int j = 0; j <= max_deg; ++j)
    for (const auto& b : spec.hw.basis()) out.emplace_back(j, b);
  return out;
}

namespace {

struct Region {
  int d, L, N;
  bool operator()(const TensorKey& k) const {
    if (k.first > d || level(k.second) > L) return false;
    return std::all_of(k.second.begin(), k.second.end(), [&](const PbwGen& g) { return g.second <= N; });
  }
};

// Keys outside the region first, then descending x-degree and level.
struct RegionOrder {
  Region region;
  bool operator()(const TensorKey& a, const TensorKey& b) const {
    const bool ia = region(a), ib = region(b);
    if (ia != ib) return !ia;
    if (a.first != b.first) return a.first > b.first;
    return PbwOrder()(b.second, a.second);
  }
};

using RegionEchelon = Echelon<TensorKey, RegionOrder>;
using RegionVector = RegionEchelon::Vector;

RegionVector to_vector(const TensorElem& w, const RegionOrder& cmp) {
  RegionVector v(cmp);
  for (const auto& [k, c] : w.terms()) v.emplace(k, c);
  return v;
}

TensorElem from_vector(const RegionVector& v) {
  TensorElem w;
  for (const auto& [k, c] : v) w.add_term(k, c);
  return w;
}

RegionEchelon closure(TensorAction& action, const std::vector<DiffOp>& gens,
                      const std::vector<TensorElem>& seeds, const RegionOrder& cmp) {
  std::vector<RegionVector> vs;
  for (const auto& s : seeds) vs.push_back(to_vector(s, cmp));
  return bounded_closure<TensorKey, RegionOrder>(
      vs, gens.size(), [&](std::size_t i, const RegionVector& v) { return to_vector(action.act(gens[i], from_vector(v)), cmp); },
      cmp.region, cmp);
}

std::vector<TensorElem> in_region_rows(const RegionEchelon& e, const Region& region) {
  std::vector<TensorElem> out;
  for (const auto& [pivot, row] : e.rows())
    if (region(pivot)) out.push_back(from_vector(row));
  return out;
}

}  // namespace

std::vector<TensorElem> tensor_closure(const TensorSpec& spec, const std::vector<TensorElem>& seeds,
                                       const ProbeBounds& bounds) {
  const Region region{bounds.max_deg, spec.hw.max_level(), spec.hw.max_order()};
  const RegionOrder cmp{region};
  TensorAction action(spec);
  const auto gens = tensor_generators(spec, bounds.gen_m, bounds.gen_n);
  return in_region_rows(closure(action, gens, seeds, cmp), region);
}

ProbeReport irreducibility_probe(const TensorSpec& spec, const ProbeBounds& bounds) {
  const Region region{bounds.max_deg, spec.hw.max_level(), spec.hw.max_order()};
  const RegionOrder cmp{region};
  TensorAction action(spec);
  const auto gens = tensor_generators(spec, bounds.gen_m, bounds.gen_n);
  const auto basis = tensor_basis(spec, bounds.max_deg);
  const RegionVector unit = to_vector(TensorElem::monomial(0, {}), cmp);

  ProbeReport report;
  report.bounds = bounds;
  report.bounded_dim = basis.size();
  for (const auto& key : basis) {
    ++report.seeds;
    RegionEchelon span = closure(action, gens, {TensorElem::monomial(key.first, key.second)}, cmp);
    std::size_t dim = 0;
    for (const auto& [pivot, row] : span.rows())
      if (region(pivot)) ++dim;
    const bool unit_in = span.contains(unit);
    if (unit_in && dim == basis.size()) continue;
    report.cyclic = false;
    report.seed = key;
    report.closure_dim = dim;
    report.contains_unit = unit_in;
    report.witness = in_region_rows(span, region);
    return report;
  }
  report.closure_dim = basis.size();
  return report;
}

IntertwinerReport intertwiner_system(const TensorSpec& a, const TensorSpec& b, const ProbeBounds& bounds) {
  const Region ra{bounds.max_deg, a.hw.max_level(), a.hw.max_order()};
  const auto basis_a = tensor_basis(a, bounds.max_deg);
  const auto basis_b = tensor_basis(b, bounds.max_deg);
  std::map<TensorKey, std::size_t, TensorOrder> index_a;
  for (std::size_t i = 0; i < basis_a.size(); ++i) index_a.emplace(basis_a[i], i);
  const std::size_t na = basis_a.size(), nb = basis_b.size();

  auto gens = tensor_generators(a, bounds.gen_m, bounds.gen_n);
  gens.push_back(DiffOp::central(DHAT));
  TensorAction act_a(a), act_b(b);

  IntertwinerReport report;
  report.unknowns = na * nb;
  const bool same_basis = basis_a == basis_b;
  report.identity_solves = same_basis;
  Echelon<std::size_t> rows;
  for (const auto& g : gens) {
    std::vector<TensorElem> images_b;
    for (const auto& kb : basis_b) images_b.push_back(act_b.act(g, TensorElem::monomial(kb.first, kb.second)));
    for (std::size_t ia = 0; ia < na; ++ia) {
      const TensorElem img = act_a.act(g, TensorElem::monomial(basis_a[ia].first, basis_a[ia].second));
      if (!std::all_of(img.terms().begin(), img.terms().end(), [&](const auto& kv) { return ra(kv.first); }))
        continue;
      // Row per coordinate of b: Phi(g.e_ia) - g.Phi(e_ia).
      std::map<TensorKey, std::map<std::size_t, Scalar>, TensorOrder> eqs;
      for (const auto& [k, c] : img.terms()) {
        const std::size_t ka = index_a.at(k);
        for (std::size_t ib = 0; ib < nb; ++ib) eqs[basis_b[ib]][ka * nb + ib] += c;
      }
      for (std::size_t ib = 0; ib < nb; ++ib)
        for (const auto& [kappa, c] : images_b[ib].terms()) eqs[kappa][ia * nb + ib] -= c;
      for (auto& [kappa, eq] : eqs) {
        std::erase_if(eq, [](const auto& kv) { return kv.second.is_zero(); });
        if (eq.empty()) continue;
        ++report.equations;
        if (same_basis) {
          Scalar dot;
          for (std::size_t i = 0; i < na; ++i)
            if (auto it = eq.find(i * nb + i); it != eq.end()) dot += it->second;
          if (!dot.is_zero()) report.identity_solves = false;
        }
        rows.insert(Echelon<std::size_t>::Vector(eq.begin(), eq.end()));
      }
    }
  }
  report.rank = rows.rank();
  report.dim = report.unknowns - report.rank;
  return report;
}

std::size_t intertwiner_dim(const TensorSpec& a, const TensorSpec& b, const ProbeBounds& bounds) {
  return intertwiner_system(a, b, bounds).dim;
}

}  // namespace weylmod
