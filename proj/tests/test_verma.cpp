#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"
#include "weylmod/verma.hpp"

using namespace weylmod;
using weylmod::testing::q;

namespace {

const AlgebraCtx DHAT = AlgebraCtx::centrally_extended();

DiffOp op(int m, int n) { return DiffOp::basis(DHAT, m, n); }
Polynomial px(int k, const Scalar& c = Scalar(1)) { return Polynomial::monomial({k}, c); }
Scalar a1() { return Scalar::param("a1", false); }
Scalar a2() { return Scalar::param("a2", false); }

Quasipolynomial phi_x() { return Quasipolynomial::term(px(1)); }
Quasipolynomial phi_expm1() { return Quasipolynomial::term(px(0), Scalar(1)) - Quasipolynomial::term(px(0)); }
// a1 (e^x - 1) + a2 x e^x: h_0 and h_1 independent.
Quasipolynomial phi_generic() {
  return a1() * phi_expm1() + Quasipolynomial::term(px(1, a2()), Scalar(1));
}

// B_0 = 1, sum_{k=0}^{n} C(n+1, k) B_k = 0.
std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> b{Rational(1)};
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * b[static_cast<std::size_t>(k)];
    b.push_back(-s / Rational(m + 1));
  }
  return b;
}

PbwMonomial mono(std::initializer_list<PbwGen> g) { return PbwMonomial(g); }

}  // namespace

TEST_CASE("quasipolynomial basics") {
  auto p = Quasipolynomial::term(px(2) + px(0), a1()) - Quasipolynomial::term(px(2) + px(0));
  CHECK(p.at_zero().is_zero());
  CHECK(p.to_string() == "-x^2 - 1 + (x^2 + 1)*exp(a1*x)");
  CHECK(phi_x().to_string() == "x");
  CHECK(phi_expm1().to_string() == "-1 + exp(x)");
  CHECK((phi_x() - phi_x()).is_zero());
  Series s = phi_expm1().series(4);
  CHECK(s[0].is_zero());
  CHECK(s[1] == Scalar(1));
  CHECK(s[3] == q(1, 6));
}

TEST_CASE("h from phi") {
  CHECK(h_from_phi(phi_expm1(), 0) == Scalar(-1));
  for (std::size_t n = 1; n <= 6; ++n) CHECK(h_from_phi(phi_expm1(), n).is_zero());
  for (std::size_t n = 0; n <= 5; ++n) CHECK(h_from_phi(Quasipolynomial(), n).is_zero());
  CHECK(h_from_phi(phi_x(), 0) == Scalar(-1));
  CHECK(h_from_phi(phi_x(), 1) == q(1, 2));
  CHECK(h_from_phi(phi_x(), 2) == q(-1, 6));
  CHECK(h_from_phi(phi_x(), 3) == Scalar(0));
  auto b = bernoulli(12);
  HWSpec spec(Scalar(0), phi_x());
  for (std::size_t n = 0; n <= 12; ++n) {
    CHECK(h_from_phi(phi_x(), n) == Scalar(-b[n]));
    CHECK(spec.h(n) == Scalar(-b[n]));
  }
  CHECK_THROWS_AS(h_from_phi(Quasipolynomial::term(px(0)), 2), DomainError);
  CHECK_THROWS_AS(HWSpec(Scalar(0), Quasipolynomial::term(px(0), a1())), DomainError);
}

TEST_CASE("generating series round trip") {
  // -sum h_n x^n / n! times (e^x - 1) gives phi back.
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int iter = 0; iter < 20; ++iter) {
    Quasipolynomial phi = Quasipolynomial::term(px(1, Scalar(coef(rng))) + px(2, Scalar(coef(rng))));
    phi += Quasipolynomial::term(px(0, Scalar(coef(rng))) + px(1, a2()), a1());
    phi = phi - Quasipolynomial::term(px(0, phi.at_zero()));
    REQUIRE(phi.at_zero().is_zero());
    const std::size_t order = 8;
    HWSpec spec(Scalar(0), phi, order + 1);
    Series delta(order);
    for (std::size_t n = 0; n <= order; ++n)
      delta[n] = -(spec.h(n) * Scalar(Rational(1, factorial(static_cast<long>(n)))));
    Series em1 = Series::exp(Scalar(1), order);
    em1[0] = Scalar(0);
    CHECK(delta * em1 == phi.series(order));
  }
}

TEST_CASE("verma basis enumeration") {
  HWSpec spec(Scalar(0), phi_x());
  CHECK(verma_basis(spec, 0, 3).basis() == std::vector<PbwMonomial>{mono({})});
  CHECK(verma_basis(spec, 1, 1).basis() == std::vector<PbwMonomial>{mono({}), mono({{1, 0}}), mono({{1, 1}})});
  CHECK(verma_basis(spec, 2, 0).basis() ==
        std::vector<PbwMonomial>{mono({}), mono({{1, 0}}), mono({{1, 0}, {1, 0}}), mono({{2, 0}})});
  auto tv = verma_basis(spec, 2, 2);
  CHECK(tv.basis().size() == 13);
  CHECK(tv.slice(1).size() == 3);
  CHECK(tv.slice(2).size() == 9);
  CHECK(to_string(mono({{1, 1}, {2, 0}})) == "t^-1*D*t^-2*v");
  // Count multisets independently: partitions of levels with (N+1) colours.
  auto tv3 = verma_basis(spec, 4, 1);
  // level k count = coefficient of q^k in prod_j (1 - q^j)^{-2}: 1, 2, 5, 10, 20
  std::vector<std::size_t> expect{1, 2, 5, 10, 20};
  for (int k = 0; k <= 4; ++k) CHECK(tv3.slice(k).size() == expect[static_cast<std::size_t>(k)]);
}

TEST_CASE("straightening examples") {
  HWSpec spec = HWSpec::symbolic();
  auto tv = verma_basis(spec, 2, 2);
  auto tm1 = VermaElem::monomial(mono({{1, 0}}));
  CHECK(act_verma(tv, op(0, 1), tm1) == (spec.h(1) - Scalar(1)) * tm1);
  CHECK(act_verma(tv, op(1, 1), tm1) == VermaElem::monomial({}, -spec.h(0)));
  // [t, t^-1] = -1/2 C in the central extension.
  CHECK(act_verma(tv, op(1, 0), tm1) == VermaElem::monomial({}, q(-1, 2) * spec.c()));
  for (const auto& b : tv.basis()) {
    auto v = VermaElem::monomial(b);
    CHECK(act_verma(tv, DiffOp::central(DHAT), v) == spec.c() * v);
    CHECK(act_verma(tv, op(0, 1), v) == (spec.h(1) - Scalar(level(b))) * v);
    CHECK(act_verma(tv, op(3, 0), v).is_zero());
  }
  // t^-1 D^2 t^-1 = t^-1 t^-1 D^2 + [t^-1 D^2, t^-1] and [D^2, t^-1] = -2 t^-1 D + t^-1.
  CHECK(act_verma(tv, op(-1, 2), tm1) == VermaElem::monomial(mono({{1, 0}, {1, 2}})) -
                                             VermaElem::monomial(mono({{2, 1}}), Scalar(2)) +
                                             VermaElem::monomial(mono({{2, 0}})));
  CHECK(act_verma(tv, op(-1, 0), VermaElem::monomial(mono({{1, 2}}))) == VermaElem::monomial(mono({{1, 0}, {1, 2}})));
  CHECK_THROWS_AS(act_verma(tv, op(-2, 0), tm1), LevelOverflow);
  CHECK_THROWS_AS(act_verma(tv, op(0, 1), VermaElem::monomial(mono({{3, 0}}))), LevelOverflow);
}

TEST_CASE("highest weight vector eigenvalues") {
  HWSpec spec(Scalar::param("c", false), phi_generic());
  auto tv = verma_basis(spec, 1, 1);
  for (int k = 0; k <= 6; ++k)
    CHECK(act_verma(tv, op(0, k), VermaElem::highest()) ==
          VermaElem::monomial({}, h_from_phi(phi_generic(), static_cast<std::size_t>(k))));
}

TEST_CASE("straightening respects the bracket") {
  for (int which = 0; which < 2; ++which) {
    HWSpec spec = which == 0 ? HWSpec::symbolic() : HWSpec(Scalar::param("c", false), phi_generic());
    auto tv = verma_basis(spec, 2, 2);
    VermaAction act(spec);
    std::vector<DiffOp> ops;
    for (int m = -2; m <= 2; ++m)
      for (int n = 0; n <= 2; ++n) ops.push_back(op(m, n));
    ops.push_back(DiffOp::central(DHAT));
    std::size_t checks = 0;
    for (const auto& a : ops)
      for (const auto& b : ops)
        for (const auto& basis : tv.basis()) {
          auto v = VermaElem::monomial(basis);
          CHECK(act.act(bracket(a, b), v) == act.act(a, act.act(b, v)) - act.act(b, act.act(a, v)));
          ++checks;
        }
    CHECK(checks == 16 * 16 * 13);
  }
}

TEST_CASE("singular vectors") {
  HWSpec zero(Scalar(0), Quasipolynomial());
  auto tv = verma_basis(zero, 2, 1);
  auto s1 = singular_vectors(tv, 1, 3);
  CHECK(s1.size() == 2);
  auto s0 = singular_vectors(tv, 0, 3);
  REQUIRE(s0.size() == 1);
  CHECK(s0[0] == VermaElem::highest());

  HWSpec generic(Scalar::param("c", false), phi_generic());
  auto tg = verma_basis(generic, 1, 0);
  CHECK(singular_vectors(tg, 1, 2).empty());
  CHECK(singular_vectors(verma_basis(generic, 1, 1), 1, 3).empty());
  CHECK(singular_vectors(verma_basis(HWSpec::symbolic(), 2, 1), 2, 2).empty());

  // Every result is a weight vector killed by the checked positive part.
  VermaAction act(zero);
  for (const auto& v : singular_vectors(tv, 2, 2)) {
    CHECK(act.act(op(0, 1), v) == (zero.h(1) - Scalar(2)) * v);
    for (int j = 1; j <= 2; ++j)
      for (int m = 0; m <= 2; ++m) CHECK(act.act(op(j, m), v).is_zero());
  }
  CHECK_THROWS_AS(singular_vectors(tv, 3, 1), DomainError);
}

TEST_CASE("bounded quotient dimensions") {
  HWSpec generic(Scalar::param("c", false), phi_generic());
  auto tv = verma_basis(generic, 1, 2);
  CHECK(weight_space_dims(tv, {}) == std::vector<std::size_t>{1, 3});
  auto tv2 = verma_basis(generic, 2, 2);
  CHECK(weight_space_dims(tv2, {}) == std::vector<std::size_t>{1, 3, 9});

  HWSpec zero(Scalar(0), Quasipolynomial());
  auto tz = verma_basis(zero, 2, 1);
  auto dims = weight_space_dims(tz, singular_vectors(tz, 1, 3));
  CHECK(dims[0] == 1);
  CHECK(dims[1] == 0);
  // Quotienting by the highest weight vector kills everything.
  auto all = weight_space_dims(tz, {VermaElem::highest()});
  CHECK(all == std::vector<std::size_t>{0, 0, 0});
}
