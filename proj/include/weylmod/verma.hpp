#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylmod/diffop.hpp"
#include "weylmod/quasipoly.hpp"

namespace weylmod {

/// Highest weight data: C acts by c and D^n (t^0 D^n) by h_n on the highest
/// weight vector. h_0 is the eigenvalue of the identity operator t^0 D^0.
class HWSpec {
 public:
  /// h_n = -n! [x^n] phi(x)/(e^x - 1). Throws DomainError if phi(0) != 0.
  /// The first `table` values are computed up front.
  HWSpec(const Scalar& c, const Quasipolynomial& phi, std::size_t table = 24);

  /// Weights given directly: h_n = h[n] for n < h.size(), and the free
  /// parameter "h<n>" beyond.
  static HWSpec with_weights(const Scalar& c, std::vector<Scalar> h);
  /// c and every h_n free: c = param "c", h_n = param "h<n>".
  static HWSpec symbolic();

  const Scalar& c() const { return c_; }
  const std::optional<Quasipolynomial>& phi() const { return phi_; }
  Scalar h(std::size_t n) const;

 private:
  HWSpec() = default;

  Scalar c_;
  std::optional<Quasipolynomial> phi_;
  std::vector<Scalar> h_;
  bool free_tail_ = false;
};

/// h_n = -n! [x^n] phi(x)/(e^x - 1), through series_quotient.
Scalar h_from_phi(const Quasipolynomial& phi, std::size_t n);

/// Negative generator t^{-j} D^n, stored as (j, n) with j >= 1.
using PbwGen = std::pair<int, int>;
/// Sorted multiset of generators applied to the highest weight vector.
using PbwMonomial = std::vector<PbwGen>;

int level(const PbwMonomial& m);
/// "t^-1*D*t^-2*v"; the empty monomial is "v".
std::string to_string(const PbwMonomial& m);

/// Canonical basis order: level, then lexicographic.
struct PbwOrder {
  bool operator()(const PbwMonomial& a, const PbwMonomial& b) const;
};

using VermaTerms = std::map<PbwMonomial, Scalar, PbwOrder>;

/// Verma module spanned by PBW monomials of level <= L whose generators have
/// order <= N. The action itself is exact: elements may pick up monomials
/// with order above N, only the level is bounded.
class TruncVerma {
 public:
  TruncVerma(HWSpec spec, int max_level, int max_order);

  const HWSpec& spec() const { return *spec_; }
  int max_level() const { return L_; }
  int max_order() const { return N_; }
  const std::vector<PbwMonomial>& basis() const { return basis_; }
  /// Basis monomials of exactly level k.
  std::vector<PbwMonomial> slice(int k) const;

 private:
  std::shared_ptr<const HWSpec> spec_;
  int L_;
  int N_;
  std::vector<PbwMonomial> basis_;
};

TruncVerma verma_basis(const HWSpec& spec, int max_level, int max_order);

class VermaElem {
 public:
  VermaElem() = default;
  explicit VermaElem(VermaTerms terms);
  static VermaElem monomial(const PbwMonomial& m, const Scalar& c = Scalar(1));
  static VermaElem highest() { return monomial({}); }

  const VermaTerms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest level of a term; -1 for zero.
  int max_level() const;
  Scalar coefficient(const PbwMonomial& m) const;
  void add_term(const PbwMonomial& m, const Scalar& c);

  VermaElem& operator+=(const VermaElem& o);
  VermaElem& operator-=(const VermaElem& o);
  friend VermaElem operator+(VermaElem a, const VermaElem& b) { return a += b; }
  friend VermaElem operator-(VermaElem a, const VermaElem& b) { return a -= b; }
  friend VermaElem operator*(const Scalar& k, const VermaElem& a);
  friend bool operator==(const VermaElem&, const VermaElem&) = default;

  /// e.g. "2*t^-1*D*v + h1*v" in basis order.
  std::string to_string() const;

 private:
  VermaTerms terms_;
};

/// Straightening action on the full Verma module of a spec, memoized per
/// (basis operator, monomial). Not safe to share between threads; create one
/// per task.
class VermaAction {
 public:
  explicit VermaAction(const HWSpec& spec) : spec_(spec) {}

  /// op must be rank 1; its central part acts by c.
  VermaElem act(const DiffOp& op, const VermaElem& v);
  const VermaElem& act_basis(const OpKey& k, const PbwMonomial& m);

 private:
  VermaElem apply_gen_(const OpKey& k, const VermaElem& v);

  const HWSpec& spec_;
  std::map<std::pair<OpKey, PbwMonomial>, VermaElem> cache_;
};

/// Action inside tv; throws LevelOverflow if some term would land above the
/// level bound.
VermaElem act_verma(const TruncVerma& tv, const DiffOp& op, const VermaElem& v);

/// Basis of the level-k vectors v of tv with t^j D^m . v = 0 for 1 <= j <= k,
/// 0 <= m <= M. A bounded certificate: singular up to order M within the
/// order bound N of tv.
std::vector<VermaElem> singular_vectors(const TruncVerma& tv, int k, int M);

/// Dimensions of the level slices 0..L of tv modulo the closure of `sub`
/// under t^m D^n (|m| <= L, n <= gen_n, default N), computed inside the
/// bounds. Entry k is |slice(k)| minus the rank reached at level k.
std::vector<std::size_t> weight_space_dims(const TruncVerma& tv, const std::vector<VermaElem>& sub,
                                           int gen_n = -1);

}  // namespace weylmod
