#pragma once

#include <string>
#include <vector>

namespace weylmod {

struct VerifyBounds {
  int m = 3;
  int n = 3;
  int deg = 4;
  unsigned seed = 20240611;  // random samples in the witness and tensor suites
};

struct SuiteResult {
  std::string name;
  bool ok = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string detail;  // first failure, or a short summary
  double seconds = 0;
};

/// Suite names in sorted order: assoc, bracket, cocycle, hw, jacobi, module,
/// span, tensor, witness.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws DomainError for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyBounds& bounds);

// Individual suites; run_suite dispatches here.

/// The six displayed bracket identities, m in [-5, 5] and k <= 6.
SuiteResult verify_bracket_identities();
/// Antisymmetry on all pairs and Jacobi on all triples of the centrally
/// extended basis (|m| <= b.m, n <= b.n, plus C), and of the rank-2 basis
/// with |m|_inf <= 2, |n|_inf <= 2.
SuiteResult verify_jacobi(const VerifyBounds& b);
/// Cocycle identity on basis triples, alternation, Virasoro values for
/// m in [-6, 6], vanishing at m_1 = 0.
SuiteResult verify_cocycle(const VerifyBounds& b);
/// Module axiom with symbolic parameters for every Omega family (rank 2
/// with l1 bounds).
SuiteResult verify_module(const VerifyBounds& b);
/// Associative law holds on Omega(lambda, 1), fails on Omega(lambda, 0).
SuiteResult verify_assoc(const VerifyBounds& b);
/// Degree reduction to a nonzero constant for every monomial and random
/// combinations up to degree 8; simplicity probes for the reducible and
/// simple families.
SuiteResult verify_witness(unsigned seed);
/// Bernoulli values, Verma straightening against the bracket, singular
/// vector counts.
SuiteResult verify_hw();
/// Generator closure from {t, t^-1, D^2} and the rank-2 generating set.
SuiteResult verify_span();
/// Pivotal identity, Vandermonde reduction, cyclicity probe, intertwiners.
SuiteResult verify_tensor(unsigned seed);

}  // namespace weylmod
