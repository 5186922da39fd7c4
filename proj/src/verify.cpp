#include "weylmod/verify.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>

#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"
#include "weylmod/omega.hpp"
#include "weylmod/tensor.hpp"
#include "weylmod/verma.hpp"

namespace weylmod {

namespace {

const AlgebraCtx DHAT = AlgebraCtx::centrally_extended();
const AlgebraCtx D1 = AlgebraCtx::circle();
const AlgebraCtx D2(2, false);

DiffOp op(int m, int n, const Scalar& c = Scalar(1)) { return DiffOp::basis(DHAT, m, n, c); }
Scalar lam() { return Scalar::param("lambda", true); }

class Collector {
 public:
  explicit Collector(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return;
    if (r_.failures++ == 0) r_.detail = what();
    r_.ok = false;
  }
  void add(std::size_t checks) { r_.checks += checks; }
  void note(const std::string& s) {
    if (r_.ok) r_.detail = s;
  }
  SuiteResult done() { return r_; }

 private:
  SuiteResult r_;
};

std::string show_pair(const DiffOp& a, const DiffOp& b) { return "[" + a.to_string() + ", " + b.to_string() + "]"; }

std::vector<DiffOp> box1(int M, int N, AlgebraCtx ctx) {
  std::vector<DiffOp> out;
  for (int m = -M; m <= M; ++m)
    for (int n = 0; n <= N; ++n) out.push_back(DiffOp::basis(ctx, m, n));
  return out;
}

// Rank-2 Jacobi with integer structure constants. Every term of a Jacobi sum
// sits in degree m_a + m_b + m_c, so only n needs an accumulator.
class Rank2Jacobi {
 public:
  static constexpr int kM = 2, kN = 2;
  static constexpr int kMaxM = 3 * kM, kMaxN = 3 * kN;

  explicit Rank2Jacobi(Collector& col) : col_(col) {
    for (int a = -kM; a <= kM; ++a)
      for (int b = -kM; b <= kM; ++b)
        for (int p = 0; p <= kN; ++p)
          for (int q = 0; q <= kN; ++q) keys_.push_back(OpKey{{a, b}, {p, q}});
    cache_.resize(keys_.size() * cells_);
  }

  void run() {
    const std::size_t K = keys_.size();
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) {
        const DiffOp a = DiffOp::basis(D2, keys_[i]), b = DiffOp::basis(D2, keys_[j]);
        col_.check((bracket(a, b) + bracket(b, a)).is_zero(), [&] { return "antisymmetry fails on " + show_pair(a, b); });
      }
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = i; j < K; ++j)
        for (std::size_t k = j; k < K; ++k)
          col_.check(jacobi_(i, j, k), [&] {
            return "Jacobi fails on " + DiffOp::basis(D2, keys_[i]).to_string() + ", " +
                   DiffOp::basis(D2, keys_[j]).to_string() + ", " + DiffOp::basis(D2, keys_[k]).to_string();
          });
  }

 private:
  struct Term {
    int m1, m2, n1, n2;
    long c;
  };
  using Terms = std::vector<Term>;

  static int slot(const OpKey& k) {
    const int span = 2 * kMaxM + 1;
    return (((k.m[0] + kMaxM) * span + (k.m[1] + kMaxM)) * (kMaxN + 1) + k.n[0]) * (kMaxN + 1) + k.n[1];
  }

  Terms to_terms_(const DiffOp& d) {
    Terms out;
    for (const auto& [k, c] : d.terms()) {
      if (!c.is_constant() || c.constant_value().get_den() != 1 || !c.constant_value().get_num().fits_slong_p())
        throw DomainError("non-integer structure constant in " + d.to_string());
      out.push_back({k.m[0], k.m[1], k.n[0], k.n[1], c.constant_value().get_num().get_si()});
    }
    return out;
  }

  // [keys_[i], t^m D^n] for an arbitrary key inside the accumulator range.
  const Terms& br_(std::size_t i, const Term& t) {
    const OpKey k{{t.m1, t.m2}, {t.n1, t.n2}};
    const std::size_t idx = i * cells_ + static_cast<std::size_t>(slot(k));
    auto& e = cache_[idx];
    if (!e) e = to_terms_(bracket(DiffOp::basis(D2, keys_[i]), DiffOp::basis(D2, k)));
    return *e;
  }

  void cyclic_(std::size_t a, std::size_t b, std::size_t c) {
    const OpKey& kc = keys_[c];
    const Term tc{kc.m[0], kc.m[1], kc.n[0], kc.n[1], 1};
    for (const auto& t : br_(b, tc))
      for (const auto& u : br_(a, t)) acc_[static_cast<std::size_t>(u.n1 * (kMaxN + 1) + u.n2)] += t.c * u.c;
  }

  bool jacobi_(std::size_t i, std::size_t j, std::size_t k) {
    acc_.fill(0);
    cyclic_(i, j, k);
    cyclic_(j, k, i);
    cyclic_(k, i, j);
    for (long v : acc_)
      if (v != 0) return false;
    return true;
  }

  Collector& col_;
  std::vector<OpKey> keys_;
  const std::size_t cells_ = static_cast<std::size_t>((2 * kMaxM + 1) * (2 * kMaxM + 1) * (kMaxN + 1) * (kMaxN + 1));
  std::vector<std::optional<Terms>> cache_;
  std::array<long, (kMaxN + 1) * (kMaxN + 1)> acc_{};
};

// B_0 = 1, sum_{k<n+1} C(n+1, k) B_k = 0.
std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> b{Rational(1)};
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * b[static_cast<std::size_t>(k)];
    b.push_back(-s / Rational(m + 1));
  }
  return b;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"assoc", "bracket", "cocycle", "hw",     "jacobi",
                                              "module", "span",   "tensor", "witness"};
  return names;
}

SuiteResult verify_bracket_identities() {
  Collector col("bracket");
  auto expect = [&](const DiffOp& a, const DiffOp& b, const DiffOp& want) {
    DiffOp got = bracket(a, b);
    col.check(got == want, [&] { return show_pair(a, b) + " = " + got.to_string() + ", expected " + want.to_string(); });
  };
  for (int m = -5; m <= 5; ++m) {
    expect(op(0, 2), op(m, 0), op(m, 1, Scalar(2 * m)) + op(m, 0, Scalar(m * m)));
    expect(op(0, 2), op(m, 1), op(m, 1, Scalar(m * m)) + op(m, 2, Scalar(2 * m)));
  }
  expect(op(-1, 2), op(1, 2), op(0, 3, Scalar(4)));
  expect(op(0, 3), op(1, 1), op(1, 3, Scalar(3)) + op(1, 2, Scalar(3)) + op(1, 1));
  expect(op(1, 2), op(-1, 1), op(0, 2, Scalar(-3)) + op(0, 1));
  for (int k = 0; k <= 6; ++k) {
    DiffOp want = op(0, k + 1, Scalar(k + 2)) + op(0, k, Scalar::rational((k + 1) * (k - 2), 2));
    for (int i = 3; i <= k; ++i) want += op(0, k + 2 - i, Scalar(binomial(k, i)));
    expect(op(-1, k), op(1, 2), want);
  }
  return col.done();
}

SuiteResult verify_jacobi(const VerifyBounds& b) {
  Collector col("jacobi");
  auto ops = box1(b.m, b.n, DHAT);
  ops.push_back(DiffOp::central(DHAT));
  for (const auto& x : ops)
    for (const auto& y : ops)
      col.check((bracket(x, y) + bracket(y, x)).is_zero(), [&] { return "antisymmetry fails on " + show_pair(x, y); });
  std::map<std::pair<std::size_t, std::size_t>, DiffOp> br;
  auto get = [&](std::size_t i, std::size_t j) -> const DiffOp& {
    auto it = br.find({i, j});
    if (it == br.end()) it = br.emplace(std::make_pair(i, j), bracket(ops[i], ops[j])).first;
    return it->second;
  };
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i; j < ops.size(); ++j)
      for (std::size_t k = j; k < ops.size(); ++k) {
        DiffOp s = bracket(ops[i], get(j, k)) + bracket(ops[j], get(k, i)) + bracket(ops[k], get(i, j));
        col.check(s.is_zero(), [&] {
          return "Jacobi fails on " + ops[i].to_string() + ", " + ops[j].to_string() + ", " + ops[k].to_string();
        });
      }
  Rank2Jacobi(col).run();
  return col.done();
}

SuiteResult verify_cocycle(const VerifyBounds& b) {
  Collector col("cocycle");
  auto ops = box1(b.m, b.n, DHAT);
  for (const auto& x : ops)
    for (const auto& y : ops) {
      col.check((cocycle_phi(x, y) + cocycle_phi(y, x)).is_zero(), [&] { return "phi not alternating on " + show_pair(x, y); });
      if (x.terms().begin()->first.m[0] == 0)
        col.check(cocycle_phi(x, y).is_zero(), [&] { return "phi nonzero at m1 = 0 on " + show_pair(x, y); });
    }
  for (const auto& x : ops)
    for (const auto& y : ops)
      for (const auto& z : ops) {
        Scalar s = cocycle_phi(bracket(x, y), z) + cocycle_phi(bracket(y, z), x) + cocycle_phi(bracket(z, x), y);
        col.check(s.is_zero(), [&] {
          return "cocycle identity fails on " + x.to_string() + ", " + y.to_string() + ", " + z.to_string();
        });
      }
  for (int m = -6; m <= 6; ++m) {
    Scalar got = cocycle_phi(op(m, 1), op(-m, 1));
    Scalar want = Scalar::rational(m * m * m - m, 12);
    col.check(got == want, [&] { return "phi(t^m D, t^-m D) at m = " + std::to_string(m) + " is " + got.to_string(); });
  }
  return col.done();
}

SuiteResult verify_module(const VerifyBounds& b) {
  Collector col("module");
  const AxiomBounds ab{b.m, b.n, b.deg};
  const Scalar alpha = Scalar::param("alpha", false), beta = Scalar::param("beta", false);
  const Scalar lam2 = Scalar::param("lambda2", true);
  std::vector<std::pair<std::string, OmegaSpec>> specs{
      {"Omega(lambda,0)", OmegaSpec::d_module(lam(), 0)},
      {"Omega(lambda,1)", OmegaSpec::d_module(lam(), 1)},
      {"Omega(lambda,alpha)", OmegaSpec::vir(lam(), alpha)},
      {"Omega(lambda,alpha,beta)", OmegaSpec::hv(lam(), alpha, beta)},
      {"Omega(lambda,lambda2;0)", OmegaSpec::dnu({lam(), lam2}, 0)},
      {"Omega(lambda,lambda2;1)", OmegaSpec::dnu({lam(), lam2}, 1)},
  };
  for (const auto& [name, spec] : specs) {
    auto rep = verify_module_axiom(spec, ab);
    col.add(rep.checks > 0 ? rep.checks - 1 : 0);
    col.check(rep.ok, [&] {
      return name + ": " + show_pair(*rep.a, *rep.b) + " on " + rep.f->to_string() + " gives " + rep.lhs->to_string() +
             " vs " + rep.rhs->to_string();
    });
  }
  return col.done();
}

SuiteResult verify_assoc(const VerifyBounds& b) {
  Collector col("assoc");
  const AxiomBounds ab{b.m, b.n, b.deg};
  auto one = verify_assoc_action(OmegaSpec::d_module(lam(), 1), ab);
  col.add(one.checks > 0 ? one.checks - 1 : 0);
  col.check(one.ok, [&] { return "associative law fails on Omega(lambda,1) at " + one.a->to_string() + ", " + one.b->to_string(); });
  auto zero = verify_assoc_action(OmegaSpec::d_module(lam(), 0), ab);
  col.check(!zero.ok, [] { return std::string("no counterexample on Omega(lambda,0)"); });
  if (!zero.ok)
    col.note("Omega(lambda,0) counterexample: a = " + zero.a->to_string() + ", b = " + zero.b->to_string() +
             ", f = " + zero.f->to_string());
  return col.done();
}

SuiteResult verify_witness(unsigned seed) {
  Collector col("witness");
  const Scalar lam2 = Scalar::param("lambda2", true);
  auto check_chain = [&](const OmegaSpec& spec, const PolyVec& f) {
    auto chain = degree_reduction_witness(spec, f);
    const PolyVec& last = chain.empty() ? f : chain.back().result;
    bool ok = static_cast<int>(chain.size()) == f.total_degree() && last.total_degree() == 0 && !last.is_zero();
    for (std::size_t i = 0; ok && i < chain.size(); ++i) {
      const PolyVec& prev = i == 0 ? f : chain[i - 1].result;
      ok = act(spec, chain[i].op, prev) == chain[i].result && chain[i].result.total_degree() == prev.total_degree() - 1;
    }
    col.check(ok, [&] { return "degree reduction fails for " + f.to_string(); });
  };
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int eps = 0; eps <= 1; ++eps) {
    auto spec = OmegaSpec::d_module(lam(), eps);
    auto spec2 = OmegaSpec::dnu({lam(), lam2}, eps);
    for (int d = 0; d <= 8; ++d) {
      check_chain(spec, Polynomial::monomial({d}));
      for (int i = 0; i <= d; ++i) check_chain(spec2, Polynomial::monomial({i, d - i}));
      for (int iter = 0; iter < 8; ++iter) {
        PolyVec f = Polynomial::monomial({d});
        for (int k = 0; k < d; ++k) f += Polynomial::monomial({k}, Scalar(coef(rng)));
        check_chain(spec, f);
        PolyVec g = Polynomial::monomial({d / 2, d - d / 2});
        for (int k = 0; k < d; ++k)
          for (int i = 0; i <= k; ++i) g += Polynomial::monomial({i, k - i}, Scalar(coef(rng)));
        check_chain(spec2, g);
      }
    }
  }
  auto hv = simplicity_probe(OmegaSpec::hv(lam(), Scalar(0), Scalar(0)), 6);
  col.check(hv.proper_found && hv.seed == std::vector<int>{1},
            [] { return std::string("x*Omega not found invariant for Omega(lambda,0,0)"); });
  auto vir = simplicity_probe(OmegaSpec::vir(lam(), Scalar(0)), 6);
  col.check(vir.proper_found && vir.seed == std::vector<int>{1},
            [] { return std::string("x*Omega not found invariant for Omega(lambda,0)"); });
  for (int eps = 0; eps <= 1; ++eps) {
    auto r = simplicity_probe(OmegaSpec::d_module(lam(), eps), 6);
    col.check(!r.proper_found, [&] { return "proper submodule reported for Omega(lambda," + std::to_string(eps) + ")"; });
  }
  return col.done();
}

SuiteResult verify_hw() {
  Collector col("hw");
  const auto b = bernoulli(8);
  const Quasipolynomial phi_x = Quasipolynomial::term(Polynomial::monomial({1}));
  for (std::size_t n = 0; n <= 8; ++n) {
    Scalar h = h_from_phi(phi_x, n);
    col.check(h == Scalar(-b[n]), [&] { return "h_" + std::to_string(n) + " = " + h.to_string(); });
  }
  {
    HWSpec spec = HWSpec::symbolic();
    auto tv = verma_basis(spec, 2, 2);
    VermaAction act(spec);
    std::vector<DiffOp> ops = box1(2, 2, DHAT);
    ops.push_back(DiffOp::central(DHAT));
    for (const auto& x : ops)
      for (const auto& y : ops)
        for (const auto& m : tv.basis()) {
          const auto v = VermaElem::monomial(m);
          col.check(act.act(bracket(x, y), v) == act.act(x, act.act(y, v)) - act.act(y, act.act(x, v)),
                    [&] { return "Verma action breaks " + show_pair(x, y) + " on " + to_string(m); });
        }
  }
  auto generic = verma_basis(HWSpec::symbolic(), 1, 1);
  auto sg = singular_vectors(generic, 1, 3);
  col.check(sg.empty(), [&] { return "generic weights give " + std::to_string(sg.size()) + " singular vectors at level 1"; });
  auto zero = verma_basis(HWSpec(Scalar(0), Quasipolynomial()), 1, 1);
  auto sz = singular_vectors(zero, 1, 3);
  col.check(sz.size() == zero.slice(1).size(),
            [&] { return "phi = 0, c = 0 has " + std::to_string(sz.size()) + " singular vectors at level 1"; });
  return col.done();
}

SuiteResult verify_span() {
  Collector col("span");
  auto r1 = generated_span_probe({DiffOp::basis(D1, 1, 0), DiffOp::basis(D1, -1, 0), DiffOp::basis(D1, 0, 2)},
                                 SpanBounds{2, 3, 8});
  col.check(r1.missing.empty(), [&] { return std::to_string(r1.missing.size()) + " rank-1 monomials not reached"; });
  std::vector<DiffOp> gens;
  for (int i = 0; i < 2; ++i)
    for (int s : {1, -1}) {
      std::vector<int> m(2, 0);
      m[static_cast<std::size_t>(i)] = s;
      gens.push_back(DiffOp::basis(D2, OpKey{m, {0, 0}}));
    }
  for (const auto& n : {std::vector<int>{1, 1}, std::vector<int>{2, 0}, std::vector<int>{0, 2}})
    gens.push_back(DiffOp::basis(D2, OpKey{{0, 0}, n}));
  auto r2 = generated_span_probe(gens, SpanBounds{2, 2, 8});
  col.check(r2.missing.empty(), [&] { return std::to_string(r2.missing.size()) + " rank-2 monomials not reached"; });
  col.note("reached " + std::to_string(r1.reached.size()) + " and " + std::to_string(r2.reached.size()));
  return col.done();
}

SuiteResult verify_tensor(unsigned seed) {
  Collector col("tensor");
  const HWSpec hw(Scalar::param("c", false), Quasipolynomial::term(Polynomial::monomial({1})));
  for (int eps = 0; eps <= 1; ++eps) {
    TensorSpec spec(OmegaSpec::d_module(lam(), eps), verma_basis(HWSpec::symbolic(), 2, 1));
    TensorAction act(spec);
    for (const auto& b : spec.hw.basis()) {
      const auto v = TensorElem::monomial(0, b);
      const int K = vanishing_bound(VermaElem::monomial(b));
      for (int m = K; m <= K + 4; ++m)
        for (int mp = K; mp <= K + 4; ++mp) {
          auto lhs = act.act(op(m, 1, lam().pow(-m)) - op(mp, 1, lam().pow(-mp)), v);
          col.check(lhs == Scalar(eps * (mp - m)) * v, [&] {
            return "pivotal identity fails at m = " + std::to_string(m) + ", m' = " + std::to_string(mp) + " on " +
                   v.to_string();
          });
        }
    }
    std::mt19937 rng(seed + static_cast<unsigned>(eps));
    std::uniform_int_distribution<int> coef(-3, 3);
    const auto& basis = spec.hw.basis();
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int s = 1; s <= 3; ++s) {
      std::vector<TensorElem> seeds;
      for (const auto& b : basis) seeds.push_back(TensorElem::monomial(s, b));
      for (int iter = 0; iter < 6; ++iter) {
        TensorElem w = TensorElem::monomial(s, basis[pick(rng)]);
        for (int j = 0; j < s; ++j) w.add_term({j, basis[pick(rng)]}, Scalar(coef(rng)));
        seeds.push_back(w);
      }
      for (const auto& w : seeds) {
        auto r = vandermonde_reduce(spec, w);
        col.check(!r.is_zero() && r.top_degree() < w.top_degree(),
                  [&] { return "vandermonde_reduce does not lower the degree of " + w.to_string(); });
      }
    }
    auto probe = irreducibility_probe(TensorSpec(OmegaSpec::d_module(lam(), eps), verma_basis(hw, 2, 1)),
                                      ProbeBounds{3, 4, 2});
    col.check(probe.cyclic, [&] { return "probe not cyclic for eps = " + std::to_string(eps); });
  }
  const ProbeBounds ib{3, 3, 2};
  auto tv = verma_basis(hw, 1, 1);
  TensorSpec l2(OmegaSpec::d_module(Scalar(2), 1), tv), l3(OmegaSpec::d_module(Scalar(3), 1), tv),
      l2e0(OmegaSpec::d_module(Scalar(2), 0), tv);
  auto same = intertwiner_system(l2, l2, ib);
  col.check(same.dim >= 1 && same.identity_solves, [] { return std::string("identical specs have no intertwiner"); });
  col.check(intertwiner_dim(l2, l3, ib) == 0, [] { return std::string("intertwiner between lambda = 2 and 3"); });
  col.check(intertwiner_dim(l2, l2e0, ib) == 0 && intertwiner_dim(l2e0, l2, ib) == 0,
            [] { return std::string("intertwiner between eps = 1 and 0"); });
  return col.done();
}

SuiteResult run_suite(const std::string& name, const VerifyBounds& bounds) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r;
  if (name == "assoc") {
    r = verify_assoc(bounds);
  } else if (name == "bracket") {
    r = verify_bracket_identities();
  } else if (name == "cocycle") {
    r = verify_cocycle(bounds);
  } else if (name == "hw") {
    r = verify_hw();
  } else if (name == "jacobi") {
    r = verify_jacobi(bounds);
  } else if (name == "module") {
    r = verify_module(bounds);
  } else if (name == "span") {
    r = verify_span();
  } else if (name == "tensor") {
    r = verify_tensor(bounds.seed);
  } else if (name == "witness") {
    r = verify_witness(bounds.seed);
  } else {
    throw DomainError("unknown suite " + name);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace weylmod
