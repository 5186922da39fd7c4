#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "weylmod/diffop.hpp"
#include "weylmod/polynomial.hpp"
#include "weylmod/quasipoly.hpp"
#include "weylmod/tensor.hpp"
#include "weylmod/verma.hpp"

namespace weylmod {

/// Declared formal parameters, e.g. "lambda:unit, a, c". A ":unit" suffix
/// makes the parameter invertible.
class ParamDecl {
 public:
  ParamDecl() = default;
  /// Throws ParseError on malformed input, reserved or duplicate names.
  static ParamDecl parse(std::string_view text);

  void declare(const std::string& name, bool invertible);
  bool declared(const std::string& name) const { return params_.contains(name); }
  bool invertible(const std::string& name) const { return params_.at(name); }
  const std::map<std::string, bool>& params() const { return params_; }
  /// Canonical text, sorted by name.
  std::string to_string() const;

 private:
  std::map<std::string, bool> params_;
};

/// Names the grammar reserves for atoms: t, D, C, x, v, exp and the indexed
/// forms t1, D2, x3, ...
bool is_reserved(const std::string& name);

enum class Mode { Scalar, Operator, Polynomial, Quasipolynomial, Verma, Tensor };

/// Parse tree of the shared grammar
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := primary ('^' ['-'] int)?
///   primary:= rational | ident | 'exp' '(' expr ')' | '(' expr ')'
struct ExprAst {
  enum class Kind { Number, Ident, Sum, Product, Power, Exp };
  Kind kind = Kind::Number;
  std::size_t column = 0;
  Rational number;
  std::string name;
  int index = 0;                 // 1-based variable index for t1, D2, ...; 0 if none
  int exponent = 1;              // Power
  std::vector<bool> negated;     // Sum: sign per child
  std::vector<ExprAst> children;
};

/// Syntax plus atom validity for the mode: unknown identifiers, atoms of
/// another mode, indices above the rank and negative D/x exponents are
/// ParseErrors with the column of the offending token.
ExprAst parse_expr(std::string_view text, Mode mode, const ParamDecl& params, int rank = 1);

Scalar parse_scalar(std::string_view text, const ParamDecl& params);
/// Products are associative products of differential operators (so
/// "t^-1*D" is the basis element t^-1 D and "D*t" is t*D + t). C may only be
/// scaled. Rank 1 results live in the centrally extended algebra.
DiffOp parse_operator(std::string_view text, const ParamDecl& params, int rank = 1);
Polynomial parse_polynomial(std::string_view text, const ParamDecl& params, int rank = 1);
/// exp(...) must contain a*x for a scalar a.
Quasipolynomial parse_quasipolynomial(std::string_view text, const ParamDecl& params);
/// Terms are words of operators ending in v; each t atom starts a new
/// generator and the word acts right to left on v, so the canonical text of
/// a PBW monomial reads back as itself.
VermaElem parse_verma(std::string_view text, const ParamDecl& params, VermaAction& action);
/// As parse_verma with x atoms on the Omega side: "x^2*t^-1*v - 3*v".
TensorElem parse_tensor(std::string_view text, const ParamDecl& params, VermaAction& action);

}  // namespace weylmod
