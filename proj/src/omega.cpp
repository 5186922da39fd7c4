#include "weylmod/omega.hpp"

#include <cstdlib>
#include <map>

#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"
#include "weylmod/linalg.hpp"

namespace weylmod {

std::string family_name(Family f) {
  switch (f) {
    case Family::D: return "D";
    case Family::Vir: return "Vir";
    case Family::HV: return "HV";
    case Family::Dnu: return "Dnu";
  }
  return "?";
}

namespace {

void require_unit(const Scalar& s) {
  if (!s.is_unit()) throw DomainError("lambda must be a unit, got " + s.to_string());
}

void require_eps(int eps) {
  if (eps != 0 && eps != 1) throw DomainError("epsilon must be 0 or 1");
}

bool d_like(const OmegaSpec& s) { return s.family == Family::D || s.family == Family::Dnu; }

using Exponents = Polynomial::Exponents;

void check_rank(const OmegaSpec& spec, const DiffOp& op, const PolyVec& f) {
  if (op.ctx().rank() != spec.rank) throw ContextMismatch("operator rank does not match the module");
  if (f.nvars() != spec.rank) throw ContextMismatch("polynomial variable count does not match the module");
}

std::vector<Exponents> monomials_up_to(int nvars, int deg) {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(i)] = k;
      rec(i + 1, left - k);
    }
    e[static_cast<std::size_t>(i)] = 0;
  };
  rec(0, deg);
  return out;
}

// Integer vectors of length r with sum |v_i| <= bound (sign = true) or
// non-negative entries summing to <= bound.
std::vector<std::vector<int>> l1_ball(int r, int bound, bool sign) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(r), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == r) {
      out.push_back(v);
      return;
    }
    for (int k = sign ? -left : 0; k <= left; ++k) {
      v[static_cast<std::size_t>(i)] = k;
      rec(i + 1, left - std::abs(k));
    }
  };
  rec(0, bound);
  return out;
}

}  // namespace

const PolyVec& OmegaAction::mono(const OpKey& k, const Exponents& e) {
  auto key = std::make_pair(k, e);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(std::move(key), compute_(k, e)).first->second;
}

PolyVec OmegaAction::apply(const DiffOp& op, const PolyVec& f) {
  PolyVec out(spec_.rank);
  for (const auto& [k, c] : op.terms())
    for (const auto& [e, fc] : f.terms()) {
      const Scalar cf = c * fc;
      for (const auto& [e2, c2] : mono(k, e).terms()) out.add_term(e2, cf * c2);
    }
  return out;
}

Scalar OmegaAction::lambda_pow_(const std::vector<int>& m) const {
  Scalar s(1);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) s *= spec_.lambda[i].pow(m[i]);
  return s;
}

PolyVec OmegaAction::compute_(const OpKey& k, const Exponents& e) const {
  const int r = spec_.rank;
  auto shifted_monomial = [&](const std::vector<int>& m) {
    std::vector<Scalar> s;
    for (int mi : m) s.emplace_back(static_cast<long>(mi));
    return Polynomial::monomial(e).shifted(s);
  };
  switch (spec_.family) {
    case Family::D:
    case Family::Dnu: {
      int total_n = 0;
      for (int n : k.n) total_n += n;
      Scalar c = lambda_pow_(k.m);
      // beta^{1-|n|} with beta = -1 when eps = 0.
      if (spec_.epsilon == 0 && (1 - total_n) % 2 != 0) c = -c;
      PolyVec p = Polynomial::constant(r, c);
      for (int j = 0; j < r; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (k.n[ju] == 0) continue;
        p = p * Polynomial::linear(r, j, Scalar(static_cast<long>(spec_.epsilon * k.m[ju]))).pow(k.n[ju]);
      }
      return p * shifted_monomial(k.m);
    }
    case Family::Vir:
    case Family::HV: {
      const int m = k.m[0];
      const Scalar lam = lambda_pow_(k.m);
      if (k.n[0] == 1) {
        PolyVec lin = Polynomial::monomial({1}) - Polynomial::constant(1, Scalar(static_cast<long>(m)) * spec_.alpha);
        return lam * (lin * shifted_monomial(k.m));
      }
      if (k.n[0] == 0 && spec_.family == Family::HV) return (spec_.beta * lam) * shifted_monomial(k.m);
      throw DomainError("operator is not in the " + family_name(spec_.family) + " family's algebra");
    }
  }
  throw DomainError("unknown family");
}

OmegaSpec OmegaSpec::d_module(const Scalar& lambda, int eps) {
  require_unit(lambda);
  require_eps(eps);
  OmegaSpec s;
  s.family = Family::D;
  s.lambda = {lambda};
  s.epsilon = eps;
  return s;
}

OmegaSpec OmegaSpec::vir(const Scalar& lambda, const Scalar& alpha) {
  require_unit(lambda);
  OmegaSpec s;
  s.family = Family::Vir;
  s.lambda = {lambda};
  s.alpha = alpha;
  return s;
}

OmegaSpec OmegaSpec::hv(const Scalar& lambda, const Scalar& alpha, const Scalar& beta) {
  OmegaSpec s = vir(lambda, alpha);
  s.family = Family::HV;
  s.beta = beta;
  return s;
}

OmegaSpec OmegaSpec::dnu(const std::vector<Scalar>& lambda, int eps) {
  if (lambda.empty()) throw DomainError("Lambda needs at least one component");
  for (const auto& l : lambda) require_unit(l);
  require_eps(eps);
  OmegaSpec s;
  s.family = Family::Dnu;
  s.rank = static_cast<int>(lambda.size());
  s.lambda = lambda;
  s.epsilon = eps;
  return s;
}

int OmegaSpec::beta_sign() const {
  if (!d_like(*this)) throw DomainError("beta_sign is defined for the D families only");
  return epsilon == 1 ? 1 : -1;
}

PolyVec act(const OmegaSpec& spec, const DiffOp& op, const PolyVec& f) {
  if (!d_like(spec)) throw DomainError("act needs a D or Dnu family module; use act_embedded");
  check_rank(spec, op, f);
  return OmegaAction(spec).apply(op, f);
}

PolyVec act_vir(const OmegaSpec& spec, int m, const PolyVec& f) {
  if (spec.family != Family::Vir && spec.family != Family::HV)
    throw DomainError("L_m acts on Vir and HV family modules only");
  return OmegaAction(spec).apply(DiffOp::basis(spec.ctx(), m, 1), f);
}

PolyVec act_hv_i(const OmegaSpec& spec, int m, const PolyVec& f) {
  if (spec.family != Family::HV) throw DomainError("I_m acts on HV family modules only");
  return OmegaAction(spec).apply(DiffOp::basis(spec.ctx(), m, 0), f);
}

PolyVec act_embedded(const OmegaSpec& spec, const DiffOp& op, const PolyVec& f) {
  check_rank(spec, op, f);
  return OmegaAction(spec).apply(op, f);
}

std::vector<DiffOp> family_generators(const OmegaSpec& spec, int max_m, int max_n) {
  std::vector<DiffOp> out;
  const AlgebraCtx ctx = spec.ctx();
  switch (spec.family) {
    case Family::Vir:
      for (int m = -max_m; m <= max_m; ++m) out.push_back(DiffOp::basis(ctx, m, 1));
      break;
    case Family::HV:
      for (int m = -max_m; m <= max_m; ++m) {
        out.push_back(DiffOp::basis(ctx, m, 0));
        out.push_back(DiffOp::basis(ctx, m, 1));
      }
      break;
    case Family::D:
    case Family::Dnu:
      for (const auto& m : l1_ball(spec.rank, max_m, true)) {
        if (spec.rank == 1) {
          for (int n = 0; n <= max_n; ++n) out.push_back(DiffOp::basis(ctx, OpKey{m, {n}}));
        } else {
          for (const auto& n : l1_ball(spec.rank, max_n, false)) out.push_back(DiffOp::basis(ctx, OpKey{m, n}));
        }
      }
      break;
  }
  return out;
}

namespace {

template <class Law>
AxiomReport run_law(const OmegaSpec& spec, const AxiomBounds& bounds, const Action& action, Law law) {
  OmegaAction actor(spec);
  Action act_fn = action ? action : Action([&](const DiffOp& op, const PolyVec& f) { return actor.apply(op, f); });
  const auto gens = family_generators(spec, bounds.max_m, bounds.max_n);
  std::vector<PolyVec> fs;
  for (const auto& e : monomials_up_to(spec.rank, bounds.max_deg)) fs.push_back(Polynomial::monomial(e));

  // g.f for every generator and monomial.
  std::vector<std::vector<PolyVec>> gf(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (const auto& f : fs) gf[i].push_back(act_fn(gens[i], f));

  AxiomReport rep;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const DiffOp combined = law.combine(gens[i], gens[j]);
      for (std::size_t k = 0; k < fs.size(); ++k) {
        ++rep.checks;
        PolyVec lhs = act_fn(combined, fs[k]);
        PolyVec rhs = law.rhs(act_fn, gens[i], gens[j], gf[i][k], gf[j][k]);
        if (lhs == rhs) continue;
        rep.ok = false;
        rep.a = gens[i];
        rep.b = gens[j];
        rep.f = fs[k];
        rep.lhs = std::move(lhs);
        rep.rhs = std::move(rhs);
        return rep;
      }
    }
  return rep;
}

struct BracketLaw {
  DiffOp combine(const DiffOp& a, const DiffOp& b) const { return bracket(a, b); }
  PolyVec rhs(const Action& act, const DiffOp& a, const DiffOp& b, const PolyVec& af, const PolyVec& bf) const {
    return act(a, bf) - act(b, af);
  }
};

struct AssocLaw {
  DiffOp combine(const DiffOp& a, const DiffOp& b) const { return assoc_product(a, b); }
  PolyVec rhs(const Action& act, const DiffOp& a, const DiffOp&, const PolyVec&, const PolyVec& bf) const {
    return act(a, bf);
  }
};

}  // namespace

AxiomReport verify_module_axiom(const OmegaSpec& spec, const AxiomBounds& bounds, const Action& action) {
  return run_law(spec, bounds, action, BracketLaw{});
}

AxiomReport verify_assoc_action(const OmegaSpec& spec, const AxiomBounds& bounds) {
  if (!d_like(spec)) throw DomainError("the associative law is checked on D family modules only");
  return run_law(spec, bounds, nullptr, AssocLaw{});
}

std::vector<ReductionStep> degree_reduction_witness(const OmegaSpec& spec, const PolyVec& f) {
  if (f.is_zero()) throw DomainError("degree reduction needs a nonzero polynomial");
  if (f.nvars() != spec.rank) throw ContextMismatch("polynomial variable count does not match the module");
  if (spec.family == Family::Vir) throw DomainError("the Vir family has no degree-lowering operator");
  if (spec.family == Family::HV && !spec.beta.is_unit())
    throw DomainError("degree reduction on the HV family needs beta to be a unit");

  const AlgebraCtx ctx = spec.ctx();
  const Scalar beta_inv = spec.family == Family::HV ? spec.beta.inverse() : Scalar(spec.beta_sign());
  std::vector<ReductionStep> chain;
  OmegaAction actor(spec);
  PolyVec cur = f;
  while (cur.total_degree() > 0) {
    // Pick a variable occurring in the top homogeneous part.
    const int top = cur.total_degree();
    int var = -1;
    for (const auto& [e, c] : cur.terms()) {
      int s = 0;
      for (int k : e) s += k;
      if (s != top) continue;
      for (int i = 0; i < spec.rank && var < 0; ++i)
        if (e[static_cast<std::size_t>(i)] > 0) var = i;
      if (var >= 0) break;
    }
    std::vector<int> unit(static_cast<std::size_t>(spec.rank), 0);
    std::vector<int> zero = unit;
    unit[static_cast<std::size_t>(var)] = 1;
    std::vector<int> n0(static_cast<std::size_t>(spec.rank), 0);
    DiffOp op = DiffOp::basis(ctx, OpKey{unit, n0}, beta_inv * spec.lambda[static_cast<std::size_t>(var)].inverse()) -
                DiffOp::basis(ctx, OpKey{zero, n0}, beta_inv);
    cur = actor.apply(op, cur);
    chain.push_back({std::move(op), cur});
  }
  return chain;
}

namespace {

struct DegreeFirst {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = 0, db = 0;
    for (int k : a) da += k;
    for (int k : b) db += k;
    if (da != db) return da > db;
    return a > b;
  }
};

}  // namespace

SimplicityReport simplicity_probe(const OmegaSpec& spec, int max_deg, int gen_m, int gen_n) {
  using Vec = Echelon<Exponents, DegreeFirst>::Vector;
  const auto gens = family_generators(spec, gen_m, gen_n);
  const auto basis = monomials_up_to(spec.rank, max_deg);
  OmegaAction actor(spec);
  auto op = [&](std::size_t i, const Vec& v) {
    PolyVec p(spec.rank);
    for (const auto& [e, c] : v) p.add_term(e, c);
    Vec out;
    const PolyVec img = actor.apply(gens[i], p);
    for (const auto& [e, c] : img.terms()) out.emplace(e, c);
    return out;
  };
  auto in_bounds = [&](const Exponents& e) {
    int s = 0;
    for (int k : e) s += k;
    return s <= max_deg;
  };

  SimplicityReport rep;
  rep.max_deg = max_deg;
  rep.bounded_dim = basis.size();
  // Seeds in increasing degree so the smallest witness is reported.
  for (auto it = basis.begin(); it != basis.end(); ++it) {
    const Exponents& seed = *it;
    Vec unit;
    unit.emplace(seed, Scalar(1));
    std::vector<Vec> seeds(1, unit);
    auto span = bounded_closure<Exponents, DegreeFirst>(seeds, gens.size(), op, in_bounds);
    std::vector<PolyVec> inside;
    for (const auto& [pivot, row] : span.rows()) {
      if (!in_bounds(pivot)) continue;
      PolyVec p(spec.rank);
      for (const auto& [e, c] : row) p.add_term(e, c);
      inside.push_back(std::move(p));
    }
    if (inside.size() < basis.size()) {
      rep.proper_found = true;
      rep.seed = seed;
      rep.witness = std::move(inside);
      return rep;
    }
  }
  return rep;
}

}  // namespace weylmod
