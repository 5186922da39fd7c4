#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylmod/omega.hpp"
#include "weylmod/verma.hpp"

namespace weylmod {

/// Omega(lambda, eps) (x) V for a truncated highest weight module V. The Omega
/// side is rank 1; the D family is the object of study, Vir and HV specs are
/// accepted for control probes over their subalgebras.
struct TensorSpec {
  OmegaSpec omega;
  TruncVerma hw;

  /// Throws DomainError for rank != 1 or the Dnu family.
  TensorSpec(OmegaSpec omega, TruncVerma hw);
};

/// x^j (x) b for a PBW monomial b.
using TensorKey = std::pair<int, PbwMonomial>;

/// x-degree, then PbwOrder.
struct TensorOrder {
  bool operator()(const TensorKey& a, const TensorKey& b) const;
};

using TensorTerms = std::map<TensorKey, Scalar, TensorOrder>;

class TensorElem {
 public:
  TensorElem() = default;
  explicit TensorElem(TensorTerms terms);
  static TensorElem monomial(int j, const PbwMonomial& b, const Scalar& c = Scalar(1));
  /// f (x) v.
  static TensorElem pure(const Polynomial& f, const VermaElem& v);

  const TensorTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// s in w = sum_{j <= s} x^j (x) v_j; -1 for zero.
  int top_degree() const;
  /// v_j.
  VermaElem component(int j) const;
  Scalar coefficient(const TensorKey& k) const;
  void add_term(const TensorKey& k, const Scalar& c);

  TensorElem& operator+=(const TensorElem& o);
  TensorElem& operator-=(const TensorElem& o);
  friend TensorElem operator+(TensorElem a, const TensorElem& b) { return a += b; }
  friend TensorElem operator-(TensorElem a, const TensorElem& b) { return a -= b; }
  friend TensorElem operator*(const Scalar& k, const TensorElem& a);
  friend bool operator==(const TensorElem&, const TensorElem&) = default;

  /// e.g. "x^2*t^-1*v - 3*v"; x atoms belong to Omega, the rest to V.
  std::string to_string() const;

 private:
  TensorTerms terms_;
};

/// Leibniz action a.(f (x) v) = (a.f) (x) v + f (x) (a.v), C acting by c on V.
/// Unchecked: the V side is the full Verma module. Memoized; one per task.
class TensorAction {
 public:
  explicit TensorAction(const TensorSpec& spec);
  TensorElem act(const DiffOp& op, const TensorElem& w);

 private:
  const TensorSpec& spec_;
  OmegaAction omega_;
  VermaAction hw_;
};

/// Throws LevelOverflow if the V side leaves the level bound of spec.hw.
TensorElem act_tensor(const TensorSpec& spec, const DiffOp& op, const TensorElem& w);

/// K(v) = 1 + max level of v. Throws DomainError for v = 0.
int vanishing_bound(const VermaElem& v);

/// w_0 .. w_{s+1} in lambda^{-m} t^m D . w = sum_i m^i w_i for m >= K, solved
/// from the s+2 nodes m = K..K+s+1. D family only; w nonzero.
std::vector<TensorElem> vandermonde_coefficients(const TensorSpec& spec, const TensorElem& w);

/// One reduction: eps = 1 returns w_{s+1} = (-1)^{s+1} 1 (x) v_s. eps = 0,
/// where w_{s+1} vanishes, takes w_s = (-1)^s x (x) v_s and applies the
/// difference beta^{-1}(lambda^{-K} t^K - lambda^{-K-1} t^{K+1}), giving
/// (-1)^s 1 (x) v_s. s = 0 returns w unchanged. Throws DomainError for w = 0.
TensorElem vandermonde_reduce(const TensorSpec& spec, const TensorElem& w);

struct ProbeBounds {
  int max_deg = 3;  // x-degree d
  int gen_m = 4;
  int gen_n = 2;
};

struct ProbeReport {
  bool cyclic = true;
  ProbeBounds bounds;
  std::size_t bounded_dim = 0;
  std::size_t seeds = 0;
  // First failing seed, if any.
  std::optional<TensorKey> seed;
  std::size_t closure_dim = 0;
  bool contains_unit = true;
  std::vector<TensorElem> witness;
};

/// Generators used by the probes: t^m D^n with |m| <= gen_m, n <= gen_n for
/// the D family, family_generators(omega, gen_m, 1) otherwise.
std::vector<DiffOp> tensor_generators(const TensorSpec& spec, int gen_m, int gen_n);

/// Bounded basis: x^j (x) b with j <= max_deg and b in spec.hw.basis().
std::vector<TensorKey> tensor_basis(const TensorSpec& spec, int max_deg);

/// Closes each basis seed under tensor_generators inside the bounded space.
/// "cyclic within bounds" iff every closure contains 1 (x) v and is the
/// whole bounded space.
ProbeReport irreducibility_probe(const TensorSpec& spec, const ProbeBounds& bounds);

/// Closure of one seed inside the bounded space (basis of the closure).
std::vector<TensorElem> tensor_closure(const TensorSpec& spec, const std::vector<TensorElem>& seeds,
                                       const ProbeBounds& bounds);

struct IntertwinerReport {
  std::size_t dim = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  // Only meaningful when both bounded bases coincide.
  bool identity_solves = false;
};

/// Linear maps Phi from the bounded space of a to that of b with
/// Phi(g.e) = g.Phi(e) for every generator g and basis vector e whose image
/// g.e stays in a's bounds; the equations are taken on every coordinate of b,
/// inside the bounds or not.
IntertwinerReport intertwiner_system(const TensorSpec& a, const TensorSpec& b, const ProbeBounds& bounds);
std::size_t intertwiner_dim(const TensorSpec& a, const TensorSpec& b, const ProbeBounds& bounds);

}  // namespace weylmod
