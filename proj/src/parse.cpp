#include "weylmod/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"

namespace weylmod {

namespace {

// Atom name split into base and index: "t2" -> ("t", 2), "D" -> ("D", 0).
std::optional<std::pair<char, int>> indexed_atom(const std::string& s) {
  if (s.empty() || (s[0] != 't' && s[0] != 'D' && s[0] != 'x')) return std::nullopt;
  if (s.size() == 1) return std::make_pair(s[0], 0);
  if (s[1] == '0') return std::nullopt;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  if (s.size() > 6) return std::nullopt;
  return std::make_pair(s[0], std::stoi(s.substr(1)));
}

}  // namespace

bool is_reserved(const std::string& name) {
  return name == "C" || name == "v" || name == "exp" || indexed_atom(name).has_value();
}

ParamDecl ParamDecl::parse(std::string_view text) {
  ParamDecl d;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) return d;
  while (true) {
    skip();
    const std::size_t start = i;
    if (i >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_'))
      throw ParseError("expected a parameter name", i);
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    const std::string name(text.substr(start, i - start));
    if (is_reserved(name)) throw ParseError("'" + name + "' is reserved", start);
    if (d.declared(name)) throw ParseError("parameter '" + name + "' declared twice", start);
    skip();
    bool inv = false;
    if (i < text.size() && text[i] == ':') {
      ++i;
      skip();
      const std::size_t fs = i;
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
      if (text.substr(fs, i - fs) != "unit") throw ParseError("expected 'unit'", fs);
      inv = true;
      skip();
    }
    d.declare(name, inv);
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError("expected ','", i);
    ++i;
  }
  return d;
}

void ParamDecl::declare(const std::string& name, bool invertible) { params_[name] = invertible; }

std::string ParamDecl::to_string() const {
  std::string s;
  for (const auto& [n, inv] : params_) {
    if (!s.empty()) s += ",";
    s += n;
    if (inv) s += ":unit";
  }
  return s;
}

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t column;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Num, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({k, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : toks_(tokenize(s)) {}

  ExprAst parse() {
    ExprAst e = expr_();
    if (peek_().kind != Tok::End) throw ParseError("unexpected '" + peek_().text + "'", peek_().column);
    return e;
  }

 private:
  const Token& peek_() const { return toks_[pos_]; }
  const Token& next_() { return toks_[pos_++]; }
  bool accept_(Tok k) {
    if (peek_().kind != k) return false;
    ++pos_;
    return true;
  }

  ExprAst expr_() {
    ExprAst sum;
    sum.kind = ExprAst::Kind::Sum;
    sum.column = peek_().column;
    bool neg = false;
    if (accept_(Tok::Minus)) {
      neg = true;
    } else {
      accept_(Tok::Plus);
    }
    sum.children.push_back(term_());
    sum.negated.push_back(neg);
    while (peek_().kind == Tok::Plus || peek_().kind == Tok::Minus) {
      neg = next_().kind == Tok::Minus;
      sum.children.push_back(term_());
      sum.negated.push_back(neg);
    }
    if (sum.children.size() == 1 && !neg) return std::move(sum.children[0]);
    return sum;
  }

  ExprAst term_() {
    ExprAst prod;
    prod.kind = ExprAst::Kind::Product;
    prod.column = peek_().column;
    prod.children.push_back(factor_());
    while (accept_(Tok::Star)) prod.children.push_back(factor_());
    if (prod.children.size() == 1) return std::move(prod.children[0]);
    return prod;
  }

  ExprAst factor_() {
    ExprAst base = primary_();
    const std::size_t col = peek_().column;
    if (!accept_(Tok::Caret)) return base;
    bool neg = accept_(Tok::Minus);
    const Token& t = next_();
    if (t.kind != Tok::Num) throw ParseError("expected an integer exponent", t.column);
    if (t.text.size() > 6) throw ParseError("exponent too large", t.column);
    ExprAst p;
    p.kind = ExprAst::Kind::Power;
    p.column = col;
    p.exponent = std::stoi(t.text) * (neg ? -1 : 1);
    p.children.push_back(std::move(base));
    return p;
  }

  ExprAst primary_() {
    const Token& t = next_();
    ExprAst a;
    a.column = t.column;
    switch (t.kind) {
      case Tok::Num: {
        a.kind = ExprAst::Kind::Number;
        Integer num(t.text);
        Integer den(1);
        if (peek_().kind == Tok::Slash) {
          ++pos_;
          const Token& d = next_();
          if (d.kind != Tok::Num) throw ParseError("expected a denominator", d.column);
          den = Integer(d.text);
          if (den == 0) throw ParseError("zero denominator", d.column);
        }
        a.number = Rational(num, den);
        a.number.canonicalize();
        return a;
      }
      case Tok::Ident: {
        if (t.text == "exp") {
          if (!accept_(Tok::LParen)) throw ParseError("expected '(' after exp", peek_().column);
          a.kind = ExprAst::Kind::Exp;
          a.children.push_back(expr_());
          if (!accept_(Tok::RParen)) throw ParseError("expected ')'", peek_().column);
          return a;
        }
        a.kind = ExprAst::Kind::Ident;
        a.name = t.text;
        if (auto at = indexed_atom(t.text)) {
          a.name = std::string(1, at->first);
          a.index = at->second;
        }
        return a;
      }
      case Tok::LParen: {
        ExprAst inner = expr_();
        if (!accept_(Tok::RParen)) throw ParseError("expected ')'", peek_().column);
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.column);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.column);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool atom_allowed(Mode mode, const std::string& name) {
  switch (mode) {
    case Mode::Scalar: return false;
    case Mode::Operator: return name == "t" || name == "D" || name == "C";
    case Mode::Polynomial:
    case Mode::Quasipolynomial: return name == "x";
    case Mode::Verma: return name == "t" || name == "D" || name == "C" || name == "v";
    case Mode::Tensor: return name == "t" || name == "D" || name == "C" || name == "v" || name == "x";
  }
  return false;
}

bool is_atom_name(const std::string& n) { return n == "t" || n == "D" || n == "x" || n == "C" || n == "v"; }

void validate(const ExprAst& e, Mode mode, const ParamDecl& params, int rank) {
  switch (e.kind) {
    case ExprAst::Kind::Number:
      return;
    case ExprAst::Kind::Ident: {
      if (is_atom_name(e.name)) {
        if (!atom_allowed(mode, e.name)) throw ParseError("'" + e.name + "' is not allowed here", e.column);
        const bool indexed_kind = e.name == "t" || e.name == "D" || e.name == "x";
        if (indexed_kind) {
          if (rank == 1 && e.index != 0) throw ParseError("indexed variables need rank > 1", e.column);
          if (rank > 1 && e.index == 0) throw ParseError("rank " + std::to_string(rank) + " needs an index", e.column);
          if (e.index > rank) throw ParseError("index above rank " + std::to_string(rank), e.column);
        }
        if (e.name == "C" && rank != 1) throw ParseError("C exists only at rank 1", e.column);
        return;
      }
      if (!params.declared(e.name)) throw ParseError("undeclared parameter '" + e.name + "'", e.column);
      return;
    }
    case ExprAst::Kind::Power: {
      const ExprAst& b = e.children[0];
      if (e.exponent < 0 && b.kind == ExprAst::Kind::Ident && (b.name == "D" || b.name == "x"))
        throw ParseError("negative exponent on " + b.name, e.column);
      if (e.exponent < 0 && b.kind == ExprAst::Kind::Ident && !is_atom_name(b.name) && params.declared(b.name) &&
          !params.invertible(b.name))
        throw ParseError("parameter '" + b.name + "' is not declared :unit", e.column);
      validate(b, mode, params, rank);
      return;
    }
    case ExprAst::Kind::Exp:
      if (mode != Mode::Quasipolynomial) throw ParseError("exp is not allowed here", e.column);
      validate(e.children[0], Mode::Polynomial, params, rank);
      return;
    case ExprAst::Kind::Sum:
    case ExprAst::Kind::Product:
      for (const auto& c : e.children) validate(c, mode, params, rank);
      return;
  }
}

// Scalar-valued subtree: numbers and parameters only.
bool scalar_only(const ExprAst& e) {
  if (e.kind == ExprAst::Kind::Ident) return !is_atom_name(e.name);
  if (e.kind == ExprAst::Kind::Exp) return false;
  for (const auto& c : e.children)
    if (!scalar_only(c)) return false;
  return true;
}

Scalar eval_scalar(const ExprAst& e, const ParamDecl& params) {
  switch (e.kind) {
    case ExprAst::Kind::Number:
      return Scalar(e.number);
    case ExprAst::Kind::Ident:
      if (is_atom_name(e.name) || !params.declared(e.name))
        throw ParseError("'" + e.name + "' is not a scalar", e.column);
      return Scalar::param(e.name, params.invertible(e.name));
    case ExprAst::Kind::Sum: {
      Scalar s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        Scalar c = eval_scalar(e.children[i], params);
        s += e.negated[i] ? -c : c;
      }
      return s;
    }
    case ExprAst::Kind::Product: {
      Scalar s(1);
      for (const auto& c : e.children) s *= eval_scalar(c, params);
      return s;
    }
    case ExprAst::Kind::Power: {
      Scalar b = eval_scalar(e.children[0], params);
      if (e.exponent < 0 && !b.is_unit()) throw ParseError("negative power of a non-unit", e.column);
      return b.pow(e.exponent);
    }
    case ExprAst::Kind::Exp:
      break;
  }
  throw ParseError("exp is not a scalar", e.column);
}

// ---- operators ----

struct OpVal {
  DiffOp ops;
  Scalar central;
};

std::optional<Scalar> as_constant(const OpVal& v) {
  if (!v.central.is_zero()) return std::nullopt;
  if (v.ops.terms().empty()) return Scalar();
  if (v.ops.terms().size() != 1) return std::nullopt;
  const auto& [k, c] = *v.ops.terms().begin();
  for (int m : k.m)
    if (m != 0) return std::nullopt;
  for (int n : k.n)
    if (n != 0) return std::nullopt;
  return c;
}

OpKey zero_key(int rank) {
  return OpKey{std::vector<int>(static_cast<std::size_t>(rank), 0), std::vector<int>(static_cast<std::size_t>(rank), 0)};
}

OpVal op_constant(int rank, const Scalar& s) {
  AlgebraCtx ctx(rank, false);
  return {DiffOp::basis(ctx, zero_key(rank), s), Scalar()};
}

OpVal op_mul(const OpVal& a, const OpVal& b, std::size_t column) {
  if (auto s = as_constant(a)) return {*s * b.ops, *s * b.central};
  if (auto s = as_constant(b)) return {*s * a.ops, *s * a.central};
  if (!a.central.is_zero() || !b.central.is_zero()) throw ParseError("C can only be multiplied by scalars", column);
  return {assoc_product(a.ops, b.ops), Scalar()};
}

OpVal eval_operator(const ExprAst& e, const ParamDecl& params, int rank) {
  const AlgebraCtx ctx(rank, false);
  if (scalar_only(e)) return op_constant(rank, eval_scalar(e, params));
  switch (e.kind) {
    case ExprAst::Kind::Ident: {
      if (e.name == "C") return {DiffOp(ctx), Scalar(1)};
      OpKey k = zero_key(rank);
      const auto i = static_cast<std::size_t>(e.index == 0 ? 0 : e.index - 1);
      (e.name == "t" ? k.m : k.n)[i] = 1;
      return {DiffOp::basis(ctx, k), Scalar()};
    }
    case ExprAst::Kind::Sum: {
      OpVal s{DiffOp(ctx), Scalar()};
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        OpVal c = eval_operator(e.children[i], params, rank);
        if (e.negated[i]) {
          s.ops -= c.ops;
          s.central -= c.central;
        } else {
          s.ops += c.ops;
          s.central += c.central;
        }
      }
      return s;
    }
    case ExprAst::Kind::Product: {
      OpVal p = op_constant(rank, Scalar(1));
      for (const auto& c : e.children) p = op_mul(p, eval_operator(c, params, rank), c.column);
      return p;
    }
    case ExprAst::Kind::Power: {
      const ExprAst& b = e.children[0];
      if (b.kind == ExprAst::Kind::Ident && b.name == "t") {
        OpKey k = zero_key(rank);
        k.m[static_cast<std::size_t>(b.index == 0 ? 0 : b.index - 1)] = e.exponent;
        return {DiffOp::basis(ctx, k), Scalar()};
      }
      if (e.exponent < 0) throw ParseError("negative exponent on an operator", e.column);
      OpVal base = eval_operator(b, params, rank);
      if (e.exponent != 1 && !base.central.is_zero()) throw ParseError("powers of C are not operators", e.column);
      OpVal p = op_constant(rank, Scalar(1));
      for (int i = 0; i < e.exponent; ++i) p = op_mul(p, base, e.column);
      return p;
    }
    default:
      break;
  }
  throw ParseError("unexpected expression", e.column);
}

// ---- polynomials ----

Polynomial eval_polynomial(const ExprAst& e, const ParamDecl& params, int rank) {
  if (scalar_only(e)) return Polynomial::constant(rank, eval_scalar(e, params));
  switch (e.kind) {
    case ExprAst::Kind::Ident: {
      Polynomial::Exponents ex(static_cast<std::size_t>(rank), 0);
      ex[static_cast<std::size_t>(e.index == 0 ? 0 : e.index - 1)] = 1;
      return Polynomial::monomial(ex);
    }
    case ExprAst::Kind::Sum: {
      Polynomial s(rank);
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        Polynomial c = eval_polynomial(e.children[i], params, rank);
        if (e.negated[i]) {
          s -= c;
        } else {
          s += c;
        }
      }
      return s;
    }
    case ExprAst::Kind::Product: {
      Polynomial p = Polynomial::constant(rank, Scalar(1));
      for (const auto& c : e.children) p = p * eval_polynomial(c, params, rank);
      return p;
    }
    case ExprAst::Kind::Power:
      if (e.exponent < 0) throw ParseError("negative exponent on a polynomial", e.column);
      return eval_polynomial(e.children[0], params, rank).pow(e.exponent);
    default:
      break;
  }
  throw ParseError("unexpected expression", e.column);
}

Quasipolynomial eval_quasi(const ExprAst& e, const ParamDecl& params) {
  if (scalar_only(e)) return Quasipolynomial::term(Polynomial::constant(1, eval_scalar(e, params)));
  switch (e.kind) {
    case ExprAst::Kind::Ident:
      return Quasipolynomial::term(Polynomial::monomial({1}));
    case ExprAst::Kind::Exp: {
      Polynomial arg = eval_polynomial(e.children[0], params, 1);
      for (const auto& [ex, c] : arg.terms())
        if (ex[0] != 1) throw ParseError("exp needs an argument of the form a*x", e.column);
      return Quasipolynomial::term(Polynomial::constant(1, Scalar(1)), arg.coefficient({1}));
    }
    case ExprAst::Kind::Sum: {
      Quasipolynomial s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        Quasipolynomial c = eval_quasi(e.children[i], params);
        s = e.negated[i] ? s - c : s + c;
      }
      return s;
    }
    case ExprAst::Kind::Product: {
      Quasipolynomial p = Quasipolynomial::term(Polynomial::constant(1, Scalar(1)));
      for (const auto& c : e.children) p = p * eval_quasi(c, params);
      return p;
    }
    case ExprAst::Kind::Power: {
      if (e.exponent < 0) throw ParseError("negative exponent on a quasipolynomial", e.column);
      Quasipolynomial base = eval_quasi(e.children[0], params);
      Quasipolynomial p = Quasipolynomial::term(Polynomial::constant(1, Scalar(1)));
      for (int i = 0; i < e.exponent; ++i) p = p * base;
      return p;
    }
    default:
      break;
  }
  throw ParseError("unexpected expression", e.column);
}

// ---- Verma and tensor words ----

const AlgebraCtx DHAT = AlgebraCtx::centrally_extended();

struct WordTerm {
  Scalar coeff{1};
  int xdeg = 0;
  VermaElem v;
};

std::size_t start_column(const ExprAst& e) {
  if ((e.kind == ExprAst::Kind::Product || e.kind == ExprAst::Kind::Power) && !e.children.empty())
    return std::min(e.column, start_column(e.children[0]));
  return e.column;
}

WordTerm eval_word(const ExprAst& e, const ParamDecl& params, VermaAction& action, bool tensor) {
  std::vector<const ExprAst*> factors;
  if (e.kind == ExprAst::Kind::Product) {
    for (const auto& c : e.children) factors.push_back(&c);
  } else {
    factors.push_back(&e);
  }
  WordTerm out;
  std::vector<DiffOp> gens;  // left to right
  bool open = false;         // last generator was started by t and may take D
  bool seen_v = false;
  for (const ExprAst* f : factors) {
    if (seen_v) throw ParseError("v must be the last factor", f->column);
    if (scalar_only(*f)) {
      out.coeff *= eval_scalar(*f, params);
      continue;
    }
    const ExprAst* base = f;
    int k = 1;
    if (f->kind == ExprAst::Kind::Power) {
      base = &f->children[0];
      k = f->exponent;
    }
    if (base->kind != ExprAst::Kind::Ident) throw ParseError("unsupported factor", f->column);
    const std::string& n = base->name;
    if (n == "v") {
      if (k != 1) throw ParseError("v cannot be raised to a power", f->column);
      seen_v = true;
    } else if (n == "x") {
      if (!tensor) throw ParseError("x is not allowed here", f->column);
      if (!gens.empty()) throw ParseError("x factors must precede the operator word", f->column);
      out.xdeg += k;
    } else if (n == "t") {
      gens.push_back(DiffOp::basis(DHAT, k, 0));
      open = true;
    } else if (n == "D") {
      if (open) {
        const OpKey key = gens.back().terms().begin()->first;
        gens.back() = DiffOp::basis(DHAT, key.m[0], key.n[0] + k);
      } else {
        gens.push_back(DiffOp::basis(DHAT, 0, k));
        open = true;
      }
    } else if (n == "C") {
      if (k != 1) throw ParseError("powers of C are not allowed", f->column);
      gens.push_back(DiffOp::central(DHAT));
      open = false;
    }
  }
  if (!seen_v) throw ParseError("term must end with v", start_column(e));
  VermaElem v = VermaElem::highest();
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) v = action.act(*it, v);
  out.v = std::move(v);
  return out;
}

template <class Fn>
void for_each_term(const ExprAst& e, Fn fn) {
  if (e.kind == ExprAst::Kind::Sum) {
    for (std::size_t i = 0; i < e.children.size(); ++i) {
      if (e.children[i].kind == ExprAst::Kind::Sum) throw ParseError("nested sums are not supported here", e.children[i].column);
      fn(e.children[i], e.negated[i]);
    }
  } else {
    fn(e, false);
  }
}

}  // namespace

ExprAst parse_expr(std::string_view text, Mode mode, const ParamDecl& params, int rank) {
  if (rank < 1) throw ContextMismatch("rank must be at least 1");
  ExprAst e = Parser(text).parse();
  validate(e, mode, params, rank);
  return e;
}

Scalar parse_scalar(std::string_view text, const ParamDecl& params) {
  return eval_scalar(parse_expr(text, Mode::Scalar, params), params);
}

DiffOp parse_operator(std::string_view text, const ParamDecl& params, int rank) {
  OpVal v = eval_operator(parse_expr(text, Mode::Operator, params, rank), params, rank);
  if (rank != 1) return v.ops;
  DiffOp op = v.ops.in_context(DHAT);
  op.add_central(v.central);
  return op;
}

Polynomial parse_polynomial(std::string_view text, const ParamDecl& params, int rank) {
  return eval_polynomial(parse_expr(text, Mode::Polynomial, params, rank), params, rank);
}

Quasipolynomial parse_quasipolynomial(std::string_view text, const ParamDecl& params) {
  return eval_quasi(parse_expr(text, Mode::Quasipolynomial, params, 1), params);
}

VermaElem parse_verma(std::string_view text, const ParamDecl& params, VermaAction& action) {
  ExprAst e = parse_expr(text, Mode::Verma, params, 1);
  VermaElem out;
  if (e.kind == ExprAst::Kind::Number && e.number == 0) return out;
  for_each_term(e, [&](const ExprAst& t, bool neg) {
    WordTerm w = eval_word(t, params, action, false);
    out += (neg ? -w.coeff : w.coeff) * w.v;
  });
  return out;
}

TensorElem parse_tensor(std::string_view text, const ParamDecl& params, VermaAction& action) {
  ExprAst e = parse_expr(text, Mode::Tensor, params, 1);
  TensorElem out;
  if (e.kind == ExprAst::Kind::Number && e.number == 0) return out;
  for_each_term(e, [&](const ExprAst& t, bool neg) {
    WordTerm w = eval_word(t, params, action, true);
    out += TensorElem::pure(Polynomial::monomial({w.xdeg}, neg ? -w.coeff : w.coeff), w.v);
  });
  return out;
}

}  // namespace weylmod
