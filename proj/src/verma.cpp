#include "weylmod/verma.hpp"

#include <algorithm>
#include <functional>

#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"
#include "weylmod/linalg.hpp"

namespace weylmod {

Scalar h_from_phi(const Quasipolynomial& phi, std::size_t n) {
  if (!phi.at_zero().is_zero()) throw DomainError("phi(0) must vanish, got " + phi.at_zero().to_string());
  const Series num = phi.series(n + 1);
  Series den = Series::exp(Scalar(1), n + 1);
  den[0] = Scalar(0);
  const Series q = series_quotient(num, den);
  return -(Scalar(factorial(static_cast<long>(n))) * q[n]);
}

HWSpec::HWSpec(const Scalar& c, const Quasipolynomial& phi, std::size_t table) : c_(c), phi_(phi) {
  if (!phi.at_zero().is_zero()) throw DomainError("phi(0) must vanish, got " + phi.at_zero().to_string());
  if (table == 0) return;
  const Series num = phi.series(table);
  Series den = Series::exp(Scalar(1), table);
  den[0] = Scalar(0);
  const Series q = series_quotient(num, den);
  for (std::size_t k = 0; k < table; ++k) h_.push_back(-(Scalar(factorial(static_cast<long>(k))) * q[k]));
}

HWSpec HWSpec::with_weights(const Scalar& c, std::vector<Scalar> h) {
  HWSpec s;
  s.c_ = c;
  s.h_ = std::move(h);
  s.free_tail_ = true;
  return s;
}

HWSpec HWSpec::symbolic() { return with_weights(Scalar::param("c", false), {}); }

Scalar HWSpec::h(std::size_t n) const {
  if (n < h_.size()) return h_[n];
  if (free_tail_) return Scalar::param("h" + std::to_string(n), false);
  return h_from_phi(*phi_, n);
}

int level(const PbwMonomial& m) {
  int s = 0;
  for (const auto& [j, n] : m) s += j;
  return s;
}

std::string to_string(const PbwMonomial& m) {
  std::string s;
  for (const auto& [j, n] : m) {
    s += "t^-" + std::to_string(j);
    if (n == 1) s += "*D";
    if (n > 1) s += "*D^" + std::to_string(n);
    s += "*";
  }
  return s + "v";
}

bool PbwOrder::operator()(const PbwMonomial& a, const PbwMonomial& b) const {
  const int la = level(a), lb = level(b);
  if (la != lb) return la < lb;
  return a < b;
}

TruncVerma::TruncVerma(HWSpec spec, int max_level, int max_order)
    : spec_(std::make_shared<const HWSpec>(std::move(spec))), L_(max_level), N_(max_order) {
  if (L_ < 0 || N_ < 0) throw DomainError("Verma bounds must be non-negative");
  std::vector<PbwGen> gens;
  for (int j = 1; j <= L_; ++j)
    for (int n = 0; n <= N_; ++n) gens.emplace_back(j, n);
  PbwMonomial cur;
  // Multisets as non-decreasing sequences over gens.
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    basis_.push_back(cur);
    for (std::size_t i = from; i < gens.size(); ++i) {
      if (gens[i].first > left) continue;
      cur.push_back(gens[i]);
      rec(i, left - gens[i].first);
      cur.pop_back();
    }
  };
  rec(0, L_);
  std::sort(basis_.begin(), basis_.end(), PbwOrder());
}

std::vector<PbwMonomial> TruncVerma::slice(int k) const {
  std::vector<PbwMonomial> out;
  for (const auto& b : basis_)
    if (level(b) == k) out.push_back(b);
  return out;
}

TruncVerma verma_basis(const HWSpec& spec, int max_level, int max_order) {
  return TruncVerma(spec, max_level, max_order);
}

VermaElem::VermaElem(VermaTerms terms) : terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

VermaElem VermaElem::monomial(const PbwMonomial& m, const Scalar& c) {
  VermaElem v;
  v.add_term(m, c);
  return v;
}

int VermaElem::max_level() const {
  int l = -1;
  for (const auto& [m, c] : terms_) l = std::max(l, level(m));
  return l;
}

Scalar VermaElem::coefficient(const PbwMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void VermaElem::add_term(const PbwMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [j, n] : m)
    if (j < 1 || n < 0) throw DomainError("PBW generators need j >= 1 and n >= 0");
  if (!std::is_sorted(m.begin(), m.end())) throw DomainError("PBW monomial is not in canonical order");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

VermaElem& VermaElem::operator+=(const VermaElem& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

VermaElem& VermaElem::operator-=(const VermaElem& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

VermaElem operator*(const Scalar& k, const VermaElem& a) {
  VermaElem r;
  if (k.is_zero()) return r;
  for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, k * c);
  return r;
}

std::string VermaElem::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool neg = false;
    std::string coeff;
    if (c.is_constant()) {
      Rational q = c.constant_value();
      neg = q < 0;
      coeff = weylmod::to_string(neg ? Rational(-q) : q);
    } else if (c.terms().size() == 1) {
      neg = c.terms()[0].second < 0;
      coeff = (neg ? -c : c).to_string();
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (coeff != "1") s += coeff + "*";
    s += weylmod::to_string(m);
  }
  return s;
}

namespace {

const AlgebraCtx kCentral = AlgebraCtx::centrally_extended();

OpKey gen_key(const PbwGen& g) { return OpKey{{-g.first}, {g.second}}; }

}  // namespace

const VermaElem& VermaAction::act_basis(const OpKey& k, const PbwMonomial& mono) {
  auto key = std::make_pair(k, mono);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const int m = k.m[0];
  const int n = k.n[0];
  VermaElem out;
  if (mono.empty()) {
    if (m == 0) out = VermaElem::monomial({}, spec_.h(static_cast<std::size_t>(n)));
    if (m < 0) out = VermaElem::monomial({PbwGen{-m, n}});
  } else if (m < 0 && PbwGen{-m, n} <= mono.front()) {
    PbwMonomial longer;
    longer.reserve(mono.size() + 1);
    longer.push_back(PbwGen{-m, n});
    longer.insert(longer.end(), mono.begin(), mono.end());
    out = VermaElem::monomial(longer);
  } else {
    // x g1 rest = g1 (x rest) + [x, g1] rest
    const PbwGen g1 = mono.front();
    const PbwMonomial rest(mono.begin() + 1, mono.end());
    const VermaElem x_rest = act_basis(k, rest);
    out = apply_gen_(gen_key(g1), x_rest);
    const DiffOp br = bracket(DiffOp::basis(kCentral, k), DiffOp::basis(kCentral, gen_key(g1)));
    for (const auto& [bk, bc] : br.terms()) out += bc * act_basis(bk, rest);
    if (!br.central_coeff().is_zero()) out += (br.central_coeff() * spec_.c()) * VermaElem::monomial(rest);
  }
  return cache_.emplace(std::move(key), std::move(out)).first->second;
}

VermaElem VermaAction::apply_gen_(const OpKey& k, const VermaElem& v) {
  VermaElem out;
  for (const auto& [mono, c] : v.terms()) out += c * act_basis(k, mono);
  return out;
}

VermaElem VermaAction::act(const DiffOp& op, const VermaElem& v) {
  if (op.ctx().rank() != 1) throw ContextMismatch("Verma modules are over the rank-1 algebra");
  VermaElem out;
  for (const auto& [k, c] : op.terms()) out += c * apply_gen_(k, v);
  if (!op.central_coeff().is_zero()) out += (op.central_coeff() * spec_.c()) * v;
  return out;
}

VermaElem act_verma(const TruncVerma& tv, const DiffOp& op, const VermaElem& v) {
  const int lv = v.max_level();
  if (lv > tv.max_level()) throw LevelOverflow("vector lies above the level bound");
  for (const auto& [k, c] : op.terms())
    if (lv >= 0 && lv - k.m[0] > tv.max_level())
      throw LevelOverflow("result would reach level " + std::to_string(lv - k.m[0]) + " > " +
                          std::to_string(tv.max_level()));
  VermaAction a(tv.spec());
  return a.act(op, v);
}

std::vector<VermaElem> singular_vectors(const TruncVerma& tv, int k, int M) {
  if (k < 0 || k > tv.max_level()) throw DomainError("level outside the truncation");
  if (M < 0) throw DomainError("order bound must be non-negative");
  const auto slice = tv.slice(k);
  if (k == 0) return {VermaElem::highest()};

  VermaAction a(tv.spec());
  std::map<std::pair<std::pair<int, int>, PbwMonomial>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(slice.size());
  for (int j = 1; j <= k; ++j)
    for (int m = 0; m <= M; ++m)
      for (std::size_t b = 0; b < slice.size(); ++b) {
        const VermaElem& img = a.act_basis(OpKey{{j}, {m}}, slice[b]);
        for (const auto& [mono, c] : img.terms()) {
          auto [it, inserted] = row_of.try_emplace({{j, m}, mono}, row_of.size());
          cols[b].emplace_back(it->second, c);
        }
      }
  Matrix mat(row_of.size(), slice.size());
  for (std::size_t b = 0; b < slice.size(); ++b)
    for (const auto& [r, c] : cols[b]) mat(r, b) += c;

  std::vector<VermaElem> out;
  if (row_of.empty()) {
    for (const auto& b : slice) out.push_back(VermaElem::monomial(b));
    return out;
  }
  const auto sol = solve_linear(mat, Matrix(mat.rows(), 0));
  for (auto ns : sol.nullspace) {
    make_primitive(ns);
    VermaElem v;
    for (std::size_t b = 0; b < slice.size(); ++b) v.add_term(slice[b], ns[b]);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

struct BoundedFirst {
  int L;
  int N;
  bool inside(const PbwMonomial& m) const {
    if (level(m) > L) return false;
    for (const auto& [j, n] : m)
      if (n > N) return false;
    return true;
  }
  bool operator()(const PbwMonomial& a, const PbwMonomial& b) const {
    const bool ia = inside(a), ib = inside(b);
    if (ia != ib) return ib;  // outside keys first
    return PbwOrder()(a, b);
  }
};

}  // namespace

std::vector<std::size_t> weight_space_dims(const TruncVerma& tv, const std::vector<VermaElem>& sub, int gen_n) {
  const int L = tv.max_level();
  const int N = tv.max_order();
  if (gen_n < 0) gen_n = N;
  const BoundedFirst cmp{L, N};
  using Vec = Echelon<PbwMonomial, BoundedFirst>::Vector;

  std::vector<OpKey> gens;
  for (int m = -L; m <= L; ++m)
    for (int n = 0; n <= gen_n; ++n) gens.push_back(OpKey{{m}, {n}});

  VermaAction a(tv.spec());
  auto op = [&](std::size_t i, const Vec& v) {
    Vec out(cmp);
    const int lv = level(v.begin()->first);  // closure elements are homogeneous
    const int m = gens[i].m[0];
    if (lv - m > L || m > lv) return out;
    for (const auto& [mono, c] : v)
      for (const auto& [r, rc] : a.act_basis(gens[i], mono).terms()) {
        Scalar& dst = out[r];
        dst += c * rc;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
  };

  std::vector<Vec> seeds;
  // D separates levels (eigenvalue h_1 - level), so the homogeneous parts of
  // each vector lie in the submodule it generates.
  for (const auto& s : sub) {
    std::map<int, Vec> parts;
    for (const auto& [mono, c] : s.terms()) {
      if (!cmp.inside(mono)) throw DomainError("quotient vector lies outside the truncation");
      parts.try_emplace(level(mono), cmp).first->second.emplace(mono, c);
    }
    for (auto& [l, v] : parts) seeds.push_back(std::move(v));
  }
  auto span = bounded_closure<PbwMonomial, BoundedFirst>(
      seeds, gens.size(), op, [&](const PbwMonomial& m) { return cmp.inside(m); }, cmp);

  std::vector<std::size_t> dims(static_cast<std::size_t>(L + 1), 0);
  for (const auto& b : tv.basis()) ++dims[static_cast<std::size_t>(level(b))];
  for (const auto& [pivot, row] : span.rows())
    if (cmp.inside(pivot)) --dims[static_cast<std::size_t>(level(pivot))];
  return dims;
}

}  // namespace weylmod
