#include "weylmod/diffop.hpp"

#include "weylmod/errors.hpp"

namespace weylmod {

AlgebraCtx::AlgebraCtx(int rank, bool central) : rank_(rank), central_(central) {
  if (rank < 1) throw ContextMismatch("algebra rank must be at least 1");
  if (central && rank != 1)
    throw ContextMismatch("the central extension is only defined for rank 1");
}

int OpKey::total_order() const {
  int s = 0;
  for (int k : n) s += k;
  return s;
}

DiffOp DiffOp::basis(AlgebraCtx ctx, int m, int n, const Scalar& coeff) {
  return basis(ctx, OpKey{{m}, {n}}, coeff);
}

DiffOp DiffOp::basis(AlgebraCtx ctx, const OpKey& key, const Scalar& coeff) {
  DiffOp d(ctx);
  d.add_term(key, coeff);
  return d;
}

DiffOp DiffOp::central(AlgebraCtx ctx, const Scalar& coeff) {
  DiffOp d(ctx);
  d.add_central(coeff);
  return d;
}

Scalar DiffOp::coefficient(const OpKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar() : it->second;
}

DiffOp DiffOp::without_central() const {
  DiffOp d(AlgebraCtx(ctx_.rank(), false));
  d.terms_ = terms_;
  return d;
}

DiffOp DiffOp::in_context(AlgebraCtx ctx) const {
  if (ctx.rank() != ctx_.rank()) throw ContextMismatch("cannot change the rank of an operator");
  if (!ctx.central() && !central_.is_zero())
    throw ContextMismatch("operator has a central part; target context is not central");
  DiffOp d(ctx);
  d.terms_ = terms_;
  d.central_ = central_;
  return d;
}

void DiffOp::check_key_(const OpKey& key) const {
  const auto r = static_cast<std::size_t>(ctx_.rank());
  if (key.m.size() != r || key.n.size() != r)
    throw ContextMismatch("operator key arity does not match algebra rank");
  for (int k : key.n)
    if (k < 0) throw DomainError("negative power of D");
}

void DiffOp::add_term(const OpKey& key, const Scalar& c) {
  check_key_(key);
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void DiffOp::add_central(const Scalar& c) {
  if (c.is_zero()) return;
  if (!ctx_.central()) throw ContextMismatch("central element C requires the central extension");
  central_ += c;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (!(o.ctx_ == ctx_)) throw ContextMismatch("operators from different algebras");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  central_ += o.central_;
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  if (!(o.ctx_ == ctx_)) throw ContextMismatch("operators from different algebras");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  central_ -= o.central_;
  return *this;
}

DiffOp operator*(const Scalar& k, const DiffOp& a) {
  DiffOp r(a.ctx_);
  if (k.is_zero()) return r;
  for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, k * c);
  r.central_ = k * a.central_;
  return r;
}

namespace {

std::string basis_text(int rank, const OpKey& key) {
  std::string s;
  auto append = [&](const std::string& f) {
    if (!s.empty()) s += "*";
    s += f;
  };
  for (int i = 0; i < rank; ++i) {
    int m = key.m[static_cast<std::size_t>(i)];
    if (m == 0) continue;
    std::string name = rank == 1 ? "t" : "t" + std::to_string(i + 1);
    append(m == 1 ? name : name + "^" + std::to_string(m));
  }
  for (int i = 0; i < rank; ++i) {
    int n = key.n[static_cast<std::size_t>(i)];
    if (n == 0) continue;
    std::string name = rank == 1 ? "D" : "D" + std::to_string(i + 1);
    append(n == 1 ? name : name + "^" + std::to_string(n));
  }
  return s;
}

// Appends "coeff*basis" with sign handling; basis may be empty (identity).
void append_term(std::string& out, const Scalar& c, const std::string& basis) {
  bool neg = false;
  std::string coeff;
  if (c.terms().size() == 1 && c.terms()[0].second < 0) {
    neg = true;
    coeff = (-c).to_string();
  } else {
    coeff = c.terms().size() == 1 ? c.to_string() : "(" + c.to_string() + ")";
  }
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (basis.empty()) {
    out += coeff;
  } else if (coeff == "1") {
    out += basis;
  } else {
    out += coeff + "*" + basis;
  }
}

}  // namespace

std::string DiffOp::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    append_term(s, it->second, basis_text(ctx_.rank(), it->first));
  if (!central_.is_zero()) append_term(s, central_, "C");
  return s;
}

}  // namespace weylmod
