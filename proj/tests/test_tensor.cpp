#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"
#include "weylmod/tensor.hpp"

using namespace weylmod;
using weylmod::testing::lam;

namespace {

const AlgebraCtx DHAT = AlgebraCtx::centrally_extended();

DiffOp op(int m, int n, const Scalar& c = Scalar(1)) { return DiffOp::basis(DHAT, m, n, c); }
PbwMonomial mono(std::initializer_list<PbwGen> g) { return PbwMonomial(g); }
TensorElem unit() { return TensorElem::monomial(0, {}); }

TensorSpec symbolic_spec(int eps, int L = 2, int N = 1) {
  return TensorSpec(OmegaSpec::d_module(lam(), eps), verma_basis(HWSpec::symbolic(), L, N));
}

TensorSpec phi_x_spec(const OmegaSpec& omega, int L, int N) {
  HWSpec hw(Scalar::param("c", false), Quasipolynomial::term(Polynomial::monomial({1})));
  return TensorSpec(omega, verma_basis(hw, L, N));
}

// Coefficients of m^i in sum_j (x - eps m)(x - m)^j (x) v_j, expanded in Z[x, m].
std::vector<TensorElem> expansion_oracle(const TensorElem& w, int eps) {
  const int s = w.top_degree();
  std::vector<TensorElem> out(static_cast<std::size_t>(s + 2));
  for (int j = 0; j <= s; ++j) {
    const VermaElem v = w.component(j);
    if (v.is_zero()) continue;
    Polynomial p = Polynomial::monomial({1, 0}) - Polynomial::monomial({0, 1}, Scalar(eps));
    Polynomial shift = Polynomial::monomial({1, 0}) - Polynomial::monomial({0, 1});
    p = p * shift.pow(j);
    for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[1])] += TensorElem::pure(Polynomial::monomial({e[0]}, c), v);
  }
  return out;
}

TensorElem random_elem(std::mt19937& rng, const TensorSpec& spec, int s) {
  const auto& basis = spec.hw.basis();
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  TensorElem w;
  for (int j = 0; j <= s; ++j)
    for (int t = 0; t < 2; ++t) w.add_term({j, basis[pick(rng)]}, Scalar(coef(rng)));
  while (w.top_degree() < s) w.add_term({s, basis[pick(rng)]}, Scalar(1));
  return w;
}

}  // namespace

TEST_CASE("tensor action examples") {
  for (int eps = 0; eps <= 1; ++eps) {
    auto spec = symbolic_spec(eps);
    const Scalar c = spec.hw.spec().c();
    CHECK(act_tensor(spec, DiffOp::central(DHAT), unit()) == c * unit());
    for (int m = 1; m <= 5; ++m) {
      auto lhs = act_tensor(spec, op(m, 1, lam().pow(-m)), unit());
      auto rhs = TensorElem::monomial(1, {}) - TensorElem::monomial(0, {}, Scalar(eps * m));
      CHECK(lhs == rhs);
    }
    CHECK(act_tensor(spec, op(0, 1), unit()) == TensorElem::monomial(1, {}) + spec.hw.spec().h(1) * unit());
  }
  auto spec = symbolic_spec(1, 1, 1);
  CHECK_THROWS_AS(act_tensor(spec, op(-2, 0), unit()), LevelOverflow);
  CHECK(TensorElem::monomial(2, mono({{1, 1}}), Scalar(-3)).to_string() == "-3*x^2*t^-1*D*v");
  CHECK((TensorElem::monomial(1, {}) + unit()).to_string() == "v + x*v");
  CHECK_THROWS_AS(TensorElem::monomial(0, mono({{2, 0}, {1, 0}})), DomainError);
  CHECK_THROWS_AS(TensorSpec(OmegaSpec::dnu({lam(), lam()}, 1), verma_basis(HWSpec::symbolic(), 1, 1)), DomainError);
}

TEST_CASE("vanishing bound") {
  CHECK(vanishing_bound(VermaElem::highest()) == 1);
  CHECK(vanishing_bound(VermaElem::monomial(mono({{1, 1}}))) == 2);
  CHECK(vanishing_bound(VermaElem::monomial(mono({{2, 0}})) + VermaElem::monomial(mono({{1, 0}}))) == 3);
  CHECK_THROWS_AS(vanishing_bound(VermaElem()), DomainError);
  // K(v) is sharp: t^{K-1} D does not kill t^{-(K-1)} v for generic weights.
  HWSpec hw = HWSpec::symbolic();
  VermaAction act(hw);
  for (int k = 1; k <= 3; ++k) {
    auto v = VermaElem::monomial(mono({{k, 0}}));
    CHECK_FALSE(act.act(op(k, 1), v).is_zero());
    for (int m = vanishing_bound(v); m <= vanishing_bound(v) + 3; ++m)
      for (int n = 0; n <= 3; ++n) CHECK(act.act(op(m, n), v).is_zero());
  }
}

TEST_CASE("pivotal identity") {
  for (int eps = 0; eps <= 1; ++eps) {
    auto spec = symbolic_spec(eps);
    for (const auto& b : spec.hw.basis()) {
      const auto v = TensorElem::monomial(0, b);
      const int K = vanishing_bound(VermaElem::monomial(b));
      for (int m = K; m <= K + 4; ++m)
        for (int mp = K; mp <= K + 4; ++mp) {
          auto lhs = act_tensor(spec, op(m, 1, lam().pow(-m)) - op(mp, 1, lam().pow(-mp)), v);
          CHECK(lhs == Scalar(eps * (mp - m)) * v);
        }
    }
  }
}

TEST_CASE("tensor module axiom") {
  for (int eps = 0; eps <= 1; ++eps) {
    auto spec = symbolic_spec(eps, 2, 1);
    TensorAction act(spec);
    std::vector<DiffOp> gens = tensor_generators(spec, 2, 2);
    gens.push_back(DiffOp::central(DHAT));
    std::size_t checks = 0;
    for (const auto& a : gens)
      for (const auto& b : gens)
        for (const auto& key : tensor_basis(spec, 2)) {
          const auto w = TensorElem::monomial(key.first, key.second);
          CHECK(act.act(bracket(a, b), w) == act.act(a, act.act(b, w)) - act.act(b, act.act(a, w)));
          ++checks;
        }
    CHECK(checks == 16 * 16 * 24);
  }
}

TEST_CASE("vandermonde coefficients match the expansion") {
  std::mt19937 rng(11);
  for (int eps = 0; eps <= 1; ++eps) {
    auto spec = symbolic_spec(eps);
    for (int s = 0; s <= 3; ++s)
      for (int iter = 0; iter < 3; ++iter) {
        auto w = random_elem(rng, spec, s);
        CHECK(vandermonde_coefficients(spec, w) == expansion_oracle(w, eps));
      }
  }
}

TEST_CASE("vandermonde reduction") {
  auto s1 = symbolic_spec(1);
  auto s0 = symbolic_spec(0);
  CHECK(vandermonde_reduce(s1, unit()) == unit());
  const auto tv = TensorElem::monomial(0, mono({{1, 1}}));
  CHECK(vandermonde_reduce(s0, tv) == tv);
  CHECK(vandermonde_reduce(s1, TensorElem::monomial(1, {})) == unit());
  auto c0 = vandermonde_coefficients(s0, TensorElem::monomial(1, {}));
  CHECK(c0[2].is_zero());
  CHECK(c0[1] == Scalar(-1) * TensorElem::monomial(1, {}));
  CHECK(vandermonde_reduce(s0, TensorElem::monomial(1, {})) == Scalar(-1) * unit());
  CHECK_THROWS_AS(vandermonde_reduce(s1, TensorElem()), DomainError);

  std::mt19937 rng(5);
  for (int eps = 0; eps <= 1; ++eps) {
    auto spec = eps == 0 ? s0 : s1;
    for (int s = 1; s <= 3; ++s)
      for (int iter = 0; iter < 4; ++iter) {
        auto w = random_elem(rng, spec, s);
        auto r = vandermonde_reduce(spec, w);
        CHECK(r.top_degree() == 0);
        // +-(1 (x) v_s): sign (-1)^{s+1} for eps = 1, (-1)^s for eps = 0.
        const int sign = ((s + (eps == 1 ? 1 : 0)) % 2 == 0) ? 1 : -1;
        CHECK(r == Scalar(sign) * TensorElem::pure(Polynomial::monomial({0}), w.component(s)));
      }
  }
}

TEST_CASE("irreducibility probe") {
  for (int eps = 0; eps <= 1; ++eps) {
    auto spec = phi_x_spec(OmegaSpec::d_module(lam(), eps), 1, 1);
    auto r = irreducibility_probe(spec, {2, 3, 2});
    CHECK(r.cyclic);
    CHECK(r.bounded_dim == 9);
    CHECK(r.seeds == 9);
  }
  // x Omega (x) V is invariant when the Omega side is HV(lambda, 0, 0).
  auto control = phi_x_spec(OmegaSpec::hv(lam(), Scalar(0), Scalar(0)), 1, 1);
  auto r = irreducibility_probe(control, {2, 3, 2});
  CHECK_FALSE(r.cyclic);
  CHECK_FALSE(r.contains_unit);
  REQUIRE(r.seed.has_value());
  CHECK(r.seed->first == 1);
  for (const auto& w : r.witness)
    for (const auto& [k, c] : w.terms()) CHECK(k.first >= 1);
  auto closure = tensor_closure(control, {TensorElem::monomial(1, {})}, {2, 3, 1});
  CHECK(closure.size() == 6);
}

TEST_CASE("intertwiner criterion") {
  const ProbeBounds b{2, 2, 1};
  HWSpec hw(Scalar::param("c", false), Quasipolynomial::term(Polynomial::monomial({1})));
  auto tv = verma_basis(hw, 1, 1);
  TensorSpec l2(OmegaSpec::d_module(Scalar(2), 1), tv);
  TensorSpec l3(OmegaSpec::d_module(Scalar(3), 1), tv);
  TensorSpec l2e0(OmegaSpec::d_module(Scalar(2), 0), tv);
  auto same = intertwiner_system(l2, l2, b);
  CHECK(same.dim >= 1);
  CHECK(same.identity_solves);
  CHECK(intertwiner_system(l2e0, l2e0, b).identity_solves);
  CHECK(intertwiner_dim(l2, l3, b) == 0);
  CHECK(intertwiner_dim(l2, l2e0, b) == 0);
  CHECK(intertwiner_dim(l2e0, l2, b) == 0);
}
