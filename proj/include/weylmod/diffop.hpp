#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "weylmod/scalar.hpp"

namespace weylmod {

/// Which algebra a DiffOp lives in: D_nu for rank nu, optionally with the
/// central element C adjoined (rank 1 only).
class AlgebraCtx {
 public:
  AlgebraCtx() = default;
  /// Throws ContextMismatch for rank < 1 or central with rank != 1.
  AlgebraCtx(int rank, bool central);

  static AlgebraCtx circle() { return AlgebraCtx(1, false); }
  static AlgebraCtx centrally_extended() { return AlgebraCtx(1, true); }

  int rank() const { return rank_; }
  bool central() const { return central_; }

  friend bool operator==(const AlgebraCtx&, const AlgebraCtx&) = default;

 private:
  int rank_ = 1;
  bool central_ = false;
};

/// Basis monomial t^m D^n with m in Z^nu, n in N^nu.
struct OpKey {
  std::vector<int> m;
  std::vector<int> n;

  int total_order() const;
  friend auto operator<=>(const OpKey&, const OpKey&) = default;
  friend bool operator==(const OpKey&, const OpKey&) = default;
};

/// Finite linear combination of t^m D^n plus a multiple of C.
class DiffOp {
 public:
  using Terms = std::map<OpKey, Scalar>;

  explicit DiffOp(AlgebraCtx ctx = AlgebraCtx()) : ctx_(ctx) {}

  /// coeff * t^m D^n (rank-1 shorthand).
  static DiffOp basis(AlgebraCtx ctx, int m, int n, const Scalar& coeff = Scalar(1));
  static DiffOp basis(AlgebraCtx ctx, const OpKey& key, const Scalar& coeff = Scalar(1));
  /// coeff * C; requires a central context.
  static DiffOp central(AlgebraCtx ctx, const Scalar& coeff = Scalar(1));

  const AlgebraCtx& ctx() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  const Scalar& central_coeff() const { return central_; }
  bool is_zero() const { return terms_.empty() && central_.is_zero(); }
  Scalar coefficient(const OpKey& key) const;
  /// Copy without the central part, in the non-central context of the same rank.
  DiffOp without_central() const;
  /// Same terms re-homed into another context of equal rank.
  DiffOp in_context(AlgebraCtx ctx) const;

  void add_term(const OpKey& key, const Scalar& c);
  void add_central(const Scalar& c);

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const Scalar& k, const DiffOp& a);
  DiffOp operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const DiffOp&, const DiffOp&) = default;

  /// Canonical text: terms in descending lexicographic (m, n) order, C last,
  /// e.g. "6*t^3*D + 9*t^3".
  std::string to_string() const;

 private:
  void check_key_(const OpKey& key) const;

  AlgebraCtx ctx_;
  Terms terms_;
  Scalar central_;
};

}  // namespace weylmod
