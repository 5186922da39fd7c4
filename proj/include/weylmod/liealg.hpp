#pragma once

#include <map>
#include <set>
#include <vector>

#include "weylmod/diffop.hpp"

namespace weylmod {

/// Product in the associative algebra of differential operators on the
/// (rank-nu) torus:
///   (t^a D^p)(t^b D^q) = sum_i C(p,i) b^i t^{a+b} D^{p+q-i},
/// applied factor-wise per variable. Operands must share a non-central ctx.
DiffOp assoc_product(const DiffOp& a, const DiffOp& b);

/// Lie bracket. Computed as the commutator ab - ba of associative products;
/// in the central context the cocycle_phi(a, b) multiple of C is added and
/// central parts of the operands drop out.
DiffOp bracket(const DiffOp& a, const DiffOp& b);

/// The 2-cocycle defining the central extension (rank 1 only). On basis
/// monomials t^a D^p, t^b D^q it vanishes unless a + b = 0 and a != 0; for
/// a > 0 it is (-1)^{p+1}/2 * sum_{i=1}^{a} (a-i)^p i^q with 0^0 = 1, and for
/// a < 0 it is -phi(t^b D^q, t^a D^p). Central parts are ignored.
Scalar cocycle_phi(const DiffOp& a, const DiffOp& b);

/// Homogeneous components keyed by the degree m in Z^nu. C sits in degree 0.
std::map<std::vector<int>, DiffOp> grade_components(const DiffOp& a);

struct SpanBounds {
  int max_m = 2;      // |m_i| <= max_m for every coordinate
  int max_n = 3;      // n_i <= max_n for every coordinate
  int depth = 8;      // bracket rounds
};

struct SpanProbeResult {
  std::set<OpKey> reached;
  std::set<OpKey> missing;
  int rounds = 0;        // rounds actually run before the span stabilised
  std::size_t span_dim = 0;
};

/// Closes the linear span of `generators` under the bracket, keeping only
/// bracket results that lie entirely inside the bounds, and reports which
/// bounded basis monomials t^m D^n lie in the resulting span.
/// Throws DomainError for an empty generator list.
SpanProbeResult generated_span_probe(const std::vector<DiffOp>& generators, const SpanBounds& bounds);

}  // namespace weylmod
