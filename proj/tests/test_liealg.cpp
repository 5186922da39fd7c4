#include <random>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"

using namespace weylmod;

namespace {

const AlgebraCtx D1 = AlgebraCtx::circle();
const AlgebraCtx DHAT = AlgebraCtx::centrally_extended();
const AlgebraCtx D2(2, false);

DiffOp op(int m, int n, AlgebraCtx ctx = D1) { return DiffOp::basis(ctx, m, n); }
DiffOp op2(int m1, int m2, int n1, int n2) { return DiffOp::basis(D2, OpKey{{m1, m2}, {n1, n2}}); }

// Direct transcription of the rank-1 structure constants.
DiffOp bracket_formula(int m1, int n1, int m2, int n2) {
  DiffOp r(D1);
  for (int i = 0; i <= n1; ++i)
    r.add_term(OpKey{{m1 + m2}, {n1 + n2 - i}}, Scalar(Integer(binomial(n1, i) * ipow(m2, i))));
  for (int j = 0; j <= n2; ++j)
    r.add_term(OpKey{{m1 + m2}, {n1 + n2 - j}}, Scalar(Integer(-binomial(n2, j) * ipow(m1, j))));
  return r;
}

// Multi-index structure constants for rank 2 (sum over i <= m, j <= n with
// product binomials and s^i, r^j).
DiffOp bracket_formula2(const OpKey& x, const OpKey& y) {
  DiffOp r(D2);
  for (int i1 = 0; i1 <= x.n[0]; ++i1)
    for (int i2 = 0; i2 <= x.n[1]; ++i2)
      r.add_term(OpKey{{x.m[0] + y.m[0], x.m[1] + y.m[1]},
                       {x.n[0] + y.n[0] - i1, x.n[1] + y.n[1] - i2}},
                 Scalar(Integer(binomial(x.n[0], i1) * binomial(x.n[1], i2) * ipow(y.m[0], i1) *
                                ipow(y.m[1], i2))));
  for (int j1 = 0; j1 <= y.n[0]; ++j1)
    for (int j2 = 0; j2 <= y.n[1]; ++j2)
      r.add_term(OpKey{{x.m[0] + y.m[0], x.m[1] + y.m[1]},
                       {x.n[0] + y.n[0] - j1, x.n[1] + y.n[1] - j2}},
                 Scalar(Integer(-binomial(y.n[0], j1) * binomial(y.n[1], j2) * ipow(x.m[0], j1) *
                                ipow(x.m[1], j2))));
  return r;
}

// Operators act faithfully on Laurent monomials: t^m D^n . t^k = k^n t^{k+m}.
using Laurent = std::map<std::vector<int>, Scalar>;
Laurent act_on(const DiffOp& d, const Laurent& f) {
  Laurent out;
  for (const auto& [key, c] : d.terms())
    for (const auto& [k, fc] : f) {
      Integer w = 1;
      std::vector<int> e(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) {
        w *= ipow(k[i], key.n[i]);
        e[i] = k[i] + key.m[i];
      }
      Scalar v = out[e] + c * fc * Scalar(w);
      if (v.is_zero()) {
        out.erase(e);
      } else {
        out[e] = v;
      }
    }
  return out;
}

Laurent minus(Laurent a, const Laurent& b) {
  for (const auto& [k, c] : b) {
    Scalar v = a[k] - c;
    if (v.is_zero()) {
      a.erase(k);
    } else {
      a[k] = v;
    }
  }
  return a;
}

std::vector<DiffOp> basis1(int M, int N, AlgebraCtx ctx = D1) {
  std::vector<DiffOp> out;
  for (int m = -M; m <= M; ++m)
    for (int n = 0; n <= N; ++n) out.push_back(op(m, n, ctx));
  return out;
}

// Literal reading of the printed cocycle (both branches, 0^0 = 1).
Rational phi_literal(int m1, int n1, int m2, int n2) {
  if (m1 == 0 || m1 + m2 != 0) return 0;
  Integer s = 0;
  if (m1 > 0) {
    for (int i = 1; i <= m1; ++i) s += ipow(m1 - i, n1) * ipow(i, n2);
    return Rational(s, 2) * ((n1 + 1) % 2 == 0 ? 1 : -1);
  }
  for (int i = m1; i <= -1; ++i) s += ipow(m1 - i, n1) * ipow(i, n2);
  return Rational(s, 2) * (n1 % 2 == 0 ? 1 : -1);
}

}  // namespace

TEST_CASE("associative product examples") {
  CHECK(assoc_product(op(1, 1), op(2, 0)) == op(3, 1) + Scalar(2) * op(3, 0));
  DiffOp a = op(2, 3) + Scalar::param("a", false) * op(-1, 0);
  CHECK(assoc_product(op(0, 0), a) == a);
  CHECK(assoc_product(op(0, 1), op(0, 1)) == op(0, 2));
  CHECK_THROWS_AS(assoc_product(op(0, 1, DHAT), op(1, 0, DHAT)), ContextMismatch);
  CHECK_THROWS_AS(assoc_product(op(0, 1), op(1, 0, DHAT)), ContextMismatch);
}

TEST_CASE("associative product is the composition of operators") {
  for (const auto& a : basis1(2, 2))
    for (const auto& b : basis1(2, 2))
      for (int k = -4; k <= 4; ++k) {
        Laurent f;
        f[{k}] = Scalar(1);
        CHECK((act_on(assoc_product(a, b), f) == act_on(a, act_on(b, f))));
      }
}

TEST_CASE("bracket examples") {
  for (int m = -5; m <= 5; ++m) {
    CHECK(bracket(op(0, 2), op(m, 0)) == Scalar(2 * m) * op(m, 1) + Scalar(m * m) * op(m, 0));
    for (int n = -5; n <= 5; ++n)
      CHECK(bracket(op(m, 1), op(n, 1)) == Scalar(n - m) * op(m + n, 1));
  }
  CHECK(bracket(op(-1, 2), op(1, 2)) == Scalar(4) * op(0, 3));
  DiffOp a = op(2, 1) - Scalar(3) * op(-1, 2);
  CHECK(bracket(a, a).is_zero());
  CHECK_THROWS_AS(bracket(op(0, 1), op(0, 1, DHAT)), ContextMismatch);
}

TEST_CASE("bracket matches the structure-constant formula") {
  for (int m1 = -3; m1 <= 3; ++m1)
    for (int n1 = 0; n1 <= 3; ++n1)
      for (int m2 = -3; m2 <= 3; ++m2)
        for (int n2 = 0; n2 <= 3; ++n2)
          CHECK(bracket(op(m1, n1), op(m2, n2)) == bracket_formula(m1, n1, m2, n2));
}

TEST_CASE("rank-2 bracket matches the multi-index formula") {
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
          for (int c = -1; c <= 1; ++c)
            for (int d = 0; d <= 2; ++d) {
              OpKey x{{a, b}, {p, q}};
              OpKey y{{c, -a}, {d, 2 - d}};
              CHECK(bracket(DiffOp::basis(D2, x), DiffOp::basis(D2, y)) == bracket_formula2(x, y));
            }
  // [t^r D_i, t^s D_j] = s_i t^{r+s} D_j - r_j t^{r+s} D_i
  CHECK(bracket(op2(1, 2, 1, 0), op2(-1, 3, 0, 1)) ==
        Scalar(-1) * op2(0, 5, 0, 1) - Scalar(2) * op2(0, 5, 1, 0));
  CHECK(bracket(op2(2, 1, 0, 1), op2(1, -1, 1, 0)) ==
        Scalar(-1) * op2(3, 0, 1, 0) - Scalar(2) * op2(3, 0, 0, 1));
}

TEST_CASE("bracket is faithful on Laurent monomials") {
  auto ops = basis1(2, 3);
  for (const auto& a : ops)
    for (const auto& b : ops)
      for (int k = -6; k <= 6; ++k) {
        Laurent f;
        f[{k}] = Scalar(1);
        CHECK((act_on(bracket(a, b), f) == minus(act_on(a, act_on(b, f)), act_on(b, act_on(a, f)))));
      }
}

TEST_CASE("cocycle examples") {
  for (const auto& b : basis1(3, 3))
    for (int k = 0; k <= 3; ++k) CHECK(cocycle_phi(op(0, k, DHAT), b.in_context(DHAT)).is_zero());
  CHECK(cocycle_phi(op(1, 0, DHAT), op(-1, 0, DHAT)) == weylmod::testing::q(-1, 2));
  CHECK(cocycle_phi(op(2, 1, DHAT), op(-2, 1, DHAT)) == weylmod::testing::q(1, 2));
  for (int m = -6; m <= 6; ++m)
    CHECK(cocycle_phi(op(m, 1, DHAT), op(-m, 1, DHAT)) == Scalar(Rational(m * m * m - m, 12)));
  CHECK_THROWS_AS(cocycle_phi(op2(1, 0, 0, 0), op2(-1, 0, 0, 0)), ContextMismatch);
}

TEST_CASE("printed cocycle agrees with the implemented one away from the one-sided-zero cases") {
  // The literal m1<0 branch is not -phi(b, a) when exactly one of n1, n2 is
  // zero; everywhere else the two readings coincide.
  int disagreements = 0;
  for (int m = -3; m <= 3; ++m)
    for (int n1 = 0; n1 <= 3; ++n1)
      for (int n2 = 0; n2 <= 3; ++n2) {
        Scalar impl = cocycle_phi(op(m, n1, DHAT), op(-m, n2, DHAT));
        Rational lit = phi_literal(m, n1, -m, n2);
        if (m >= 0 || ((n1 == 0) == (n2 == 0))) {
          CHECK(impl == Scalar(lit));
        } else if (!(impl == Scalar(lit))) {
          ++disagreements;
        }
      }
  CHECK(disagreements > 0);
}

TEST_CASE("central bracket carries the cocycle") {
  DiffOp b = bracket(op(2, 1, DHAT), op(-2, 1, DHAT));
  CHECK(b.central_coeff() == weylmod::testing::q(1, 2));
  CHECK((b.terms() == bracket(op(2, 1), op(-2, 1)).terms()));
  DiffOp c = DiffOp::central(DHAT);
  CHECK(bracket(c, op(3, 2, DHAT)).is_zero());
  CHECK_THROWS_AS(DiffOp::central(D1), ContextMismatch);
  CHECK_THROWS_AS(AlgebraCtx(2, true), ContextMismatch);
}

TEST_CASE("grading") {
  auto g = grade_components(op(3, 2) + op(0, 1));
  REQUIRE(g.size() == 2);
  CHECK(g.at({3}) == op(3, 2));
  CHECK(g.at({0}) == op(0, 1));
  auto gc = grade_components(DiffOp::central(DHAT));
  REQUIRE(gc.size() == 1);
  CHECK(gc.at({0}) == DiffOp::central(DHAT));
  CHECK(grade_components(DiffOp(D1)).empty());
  // Brackets of homogeneous elements are homogeneous of the summed degree.
  for (const auto& a : basis1(3, 2, DHAT))
    for (const auto& b : basis1(3, 2, DHAT)) {
      auto parts = grade_components(bracket(a, b));
      CHECK(parts.size() <= 1);
      if (!parts.empty())
        CHECK(parts.begin()->first[0] == a.terms().begin()->first.m[0] + b.terms().begin()->first.m[0]);
    }
}

TEST_CASE("span probe") {
  auto res = generated_span_probe({op(1, 0), op(-1, 0), op(0, 2)}, SpanBounds{2, 3, 8});
  CHECK(res.missing.empty());
  CHECK(res.reached.size() == 20);

  auto single = generated_span_probe({op(1, 0)}, SpanBounds{3, 3, 8});
  CHECK((single.reached == std::set<OpKey>{OpKey{{1}, {0}}}));
  CHECK(single.span_dim == 1);

  std::vector<DiffOp> gens;
  for (int i = 0; i < 2; ++i) {
    std::vector<int> e(2, 0);
    e[static_cast<std::size_t>(i)] = 1;
    gens.push_back(DiffOp::basis(D2, OpKey{e, {0, 0}}));
    e[static_cast<std::size_t>(i)] = -1;
    gens.push_back(DiffOp::basis(D2, OpKey{e, {0, 0}}));
  }
  gens.push_back(op2(0, 0, 1, 1));
  gens.push_back(op2(0, 0, 2, 0));
  gens.push_back(op2(0, 0, 0, 2));
  auto res2 = generated_span_probe(gens, SpanBounds{1, 2, 8});
  CHECK(res2.missing.empty());
  CHECK(res2.reached.size() == 81);

  CHECK_THROWS_AS(generated_span_probe({}, SpanBounds{}), DomainError);
}

TEST_CASE("antisymmetry and Jacobi with central terms") {
  auto ops = basis1(3, 3, DHAT);
  for (const auto& a : ops)
    for (const auto& b : ops) CHECK((bracket(a, b) + bracket(b, a)).is_zero());
  // Jacobi on a random sample of triples; C is central so [C, .] = 0 closes it.
  std::mt19937 rng(31337);
  std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
  for (int iter = 0; iter < 600; ++iter) {
    const auto& a = ops[pick(rng)];
    const auto& b = ops[pick(rng)];
    const auto& c = ops[pick(rng)];
    DiffOp j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    CHECK(j.is_zero());
  }
}

TEST_CASE("cocycle identity") {
  // phi([a,b],c) + phi([b,c],a) + phi([c,a],b) = 0 over the whole box.
  auto ops = basis1(3, 3);
  for (const auto& a : ops)
    for (const auto& b : ops)
      for (const auto& c : ops) {
        if (a.terms().begin()->first.m[0] + b.terms().begin()->first.m[0] +
                c.terms().begin()->first.m[0] != 0)
          continue;
        Scalar s = cocycle_phi(bracket(a, b).in_context(DHAT), c.in_context(DHAT)) +
                   cocycle_phi(bracket(b, c).in_context(DHAT), a.in_context(DHAT)) +
                   cocycle_phi(bracket(c, a).in_context(DHAT), b.in_context(DHAT));
        CHECK(s.is_zero());
      }
}

TEST_CASE("rank-2 antisymmetry and Jacobi") {
  std::vector<DiffOp> ops;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) ops.push_back(op2(a, b, p, q));
  std::mt19937 rng(4242);
  std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
  for (int iter = 0; iter < 400; ++iter) {
    const auto& a = ops[pick(rng)];
    const auto& b = ops[pick(rng)];
    const auto& c = ops[pick(rng)];
    CHECK((bracket(a, b) + bracket(b, a)).is_zero());
    CHECK((bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))).is_zero());
  }
}

TEST_CASE("multi-variable identities used for rank-nu modules") {
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      // [t^m D_i, D_i^2] = -2 m_i t^m D_i^2 - m_i^2 t^m D_i, for i = 1, 2.
      CHECK(bracket(op2(a, b, 1, 0), op2(0, 0, 2, 0)) ==
            Scalar(-2 * a) * op2(a, b, 2, 0) - Scalar(a * a) * op2(a, b, 1, 0));
      CHECK(bracket(op2(a, b, 0, 1), op2(0, 0, 0, 2)) ==
            Scalar(-2 * b) * op2(a, b, 0, 2) - Scalar(b * b) * op2(a, b, 0, 1));
    }
  // [t_i^-1 D_i^2, t_i D_j] = 2 D_i D_j + D_j for i != j.
  CHECK(bracket(op2(-1, 0, 2, 0), op2(1, 0, 0, 1)) == Scalar(2) * op2(0, 0, 1, 1) + op2(0, 0, 0, 1));
  CHECK(bracket(op2(0, -1, 0, 2), op2(0, 1, 1, 0)) == Scalar(2) * op2(0, 0, 1, 1) + op2(0, 0, 1, 0));
}
