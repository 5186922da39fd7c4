#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weylmod/diffop.hpp"
#include "weylmod/polynomial.hpp"

namespace weylmod {

/// D: Omega(lambda, eps) over D.  Vir: Omega(lambda, alpha) over the Virasoro
/// algebra (L_m = t^m D).  HV: Omega(lambda, alpha, beta) over span{L_m, I_m}
/// (I_m = t^m).  Dnu: Omega(Lambda, eps) over D_nu.
enum class Family { D, Vir, HV, Dnu };

std::string family_name(Family f);

struct OmegaSpec {
  Family family = Family::D;
  int rank = 1;
  std::vector<Scalar> lambda;  // one invertible entry per variable
  int epsilon = 1;             // D and Dnu only
  Scalar alpha;                // Vir and HV only
  Scalar beta;                 // HV only

  /// Throws DomainError unless lambda is a unit and eps is 0 or 1.
  static OmegaSpec d_module(const Scalar& lambda, int eps);
  static OmegaSpec vir(const Scalar& lambda, const Scalar& alpha);
  static OmegaSpec hv(const Scalar& lambda, const Scalar& alpha, const Scalar& beta);
  static OmegaSpec dnu(const std::vector<Scalar>& lambda, int eps);

  /// (-1)^{1-eps}; D and Dnu only.
  int beta_sign() const;
  AlgebraCtx ctx() const { return AlgebraCtx(rank, false); }
};

using PolyVec = Polynomial;

/// Action of basis operators on monomials, memoized per (operator, monomial).
/// No family or rank checks; one instance per task, not thread safe.
class OmegaAction {
 public:
  explicit OmegaAction(const OmegaSpec& spec) : spec_(spec) {}
  const PolyVec& mono(const OpKey& k, const Polynomial::Exponents& e);
  /// Central parts of op are ignored (C acts by 0).
  PolyVec apply(const DiffOp& op, const PolyVec& f);

 private:
  Scalar lambda_pow_(const std::vector<int>& m) const;
  PolyVec compute_(const OpKey& k, const Polynomial::Exponents& e) const;

  OmegaSpec spec_;
  std::map<std::pair<OpKey, Polynomial::Exponents>, PolyVec> cache_;
};

/// t^m D^n . f = beta^{1-|n|} Lambda^m prod_j (x_j - eps m_j)^{n_j} f(x - m),
/// extended linearly; C acts by 0. Family must be D or Dnu and op must have
/// the module's rank (ContextMismatch / DomainError otherwise).
PolyVec act(const OmegaSpec& spec, const DiffOp& op, const PolyVec& f);

/// L_m f = lambda^m (x - m alpha) f(x - m).  Family must be Vir or HV.
PolyVec act_vir(const OmegaSpec& spec, int m, const PolyVec& f);
/// I_m f = beta lambda^m f(x - m).  Family must be HV.
PolyVec act_hv_i(const OmegaSpec& spec, int m, const PolyVec& f);

/// Action of a rank-1 operator written in the embedded generators
/// L_m = t^m D, I_m = t^m (and C, acting by 0). Terms with n >= 2, or n = 0
/// for the Vir family, throw DomainError. D and Dnu specs dispatch to act.
PolyVec act_embedded(const OmegaSpec& spec, const DiffOp& op, const PolyVec& f);

/// Basis operators the family is defined on, with |m| <= max_m and n <= max_n.
/// For rank nu > 1 the bounds apply to |m|_1 and |n|_1.
std::vector<DiffOp> family_generators(const OmegaSpec& spec, int max_m, int max_n);

using Action = std::function<PolyVec(const DiffOp&, const PolyVec&)>;

struct AxiomBounds {
  int max_m = 3;
  int max_n = 3;
  int max_deg = 4;
};

struct AxiomReport {
  bool ok = true;
  std::size_t checks = 0;
  // First counterexample, if any.
  std::optional<DiffOp> a, b;
  std::optional<PolyVec> f, lhs, rhs;
};

/// Checks [a,b].f = a.(b.f) - b.(a.f) for all a, b in family_generators and
/// every monomial f of total degree <= max_deg. `action` overrides the
/// family's own action (used to test the checker on corrupted actions).
AxiomReport verify_module_axiom(const OmegaSpec& spec, const AxiomBounds& bounds,
                                const Action& action = nullptr);

/// Same loop with the associative law (ab).f = a.(b.f) in place of the
/// bracket. D family only.
AxiomReport verify_assoc_action(const OmegaSpec& spec, const AxiomBounds& bounds);

struct ReductionStep {
  DiffOp op;
  PolyVec result;
};

/// Chain of operators each lowering the total degree by one, ending at a
/// nonzero constant. For D/Dnu the step on variable i is
/// beta^{-1}(lambda_i^{-1} t_i - 1), i.e. f -> f(.., x_i - 1, ..) - f; HV uses
/// beta^{-1} lambda^{-1} I_1 - beta^{-1} I_0 and needs beta to be a unit.
/// Throws DomainError for f = 0 or the Vir family.
std::vector<ReductionStep> degree_reduction_witness(const OmegaSpec& spec, const PolyVec& f);

struct SimplicityReport {
  bool proper_found = false;
  int max_deg = 0;
  std::vector<int> seed;          // x-exponent of the seed whose closure is proper
  std::vector<PolyVec> witness;   // basis of that closure within the bound
  std::size_t bounded_dim = 0;    // dimension of the bounded space
};

/// For each monomial seed of degree <= max_deg, closes it under
/// family_generators(spec, gen_m, gen_n) inside the degree bound. Reports the
/// first seed whose closure misses part of the bounded space. A negative
/// result means "nothing found within bounds" only.
SimplicityReport simplicity_probe(const OmegaSpec& spec, int max_deg, int gen_m = 2, int gen_n = 2);

}  // namespace weylmod
