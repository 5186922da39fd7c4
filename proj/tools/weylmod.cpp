#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "render.hpp"
#include "weylmod/errors.hpp"
#include "weylmod/omega.hpp"
#include "weylmod/parse.hpp"

using namespace weylmod;
using weylmod::cli::ordered_json;
using weylmod::cli::to_json;

namespace {

// Usage errors detected after CLI11 parsing (bad --bounds keys, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

constexpr const char* kDefaultParams = "lambda:unit,alpha,beta,c";

struct Options {
  int rank = 1;
  std::string params;
  bool json = false;
  std::string bounds;
  unsigned seed = 20240611;
  bool timings = false;

  std::string family = "D";
  std::string lambda = "lambda";
  int eps = 1;
  std::string alpha = "alpha";
  std::string beta = "beta";
  std::string lambda2;
  int eps2 = -1;
  std::string c = "c";
  std::string phi;
  std::string suite = "all";

  std::vector<std::string> args;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// "m=3,n=2": keys must be in `defaults`; values are non-negative integers.
std::map<std::string, int> parse_bounds(const std::string& text, std::map<std::string, int> defaults) {
  if (trim(text).empty()) return defaults;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bounds entry '" + item + "' is not k=v");
    const std::string key = trim(item.substr(0, eq));
    const std::string val = trim(item.substr(eq + 1));
    if (!defaults.contains(key)) {
      std::string known;
      for (const auto& [k, v] : defaults) known += (known.empty() ? "" : ", ") + k;
      throw UsageError("unknown bounds key '" + key + "' (expected one of " + known + ")");
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != val.size() || v < 0) throw UsageError("bounds value for '" + key + "' must be a non-negative integer");
    defaults[key] = v;
  }
  if (defaults.contains("depth") && defaults["depth"] < 1) throw UsageError("depth must be at least 1");
  return defaults;
}

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {
    if (o_.rank < 1) throw UsageError("--rank must be at least 1");
    params_ = ParamDecl::parse(kDefaultParams);
    if (!o_.params.empty()) {
      const ParamDecl user = ParamDecl::parse(o_.params);
      for (const auto& [name, inv] : user.params()) params_.declare(name, inv);
    }
  }

  int run(const std::string& cmd) {
    cmd_ = cmd;
    static const std::vector<std::string> unbounded{"bracket", "product", "cocycle", "act", "grade"};
    if (!o_.bounds.empty() && std::find(unbounded.begin(), unbounded.end(), cmd) != unbounded.end())
      throw UsageError(cmd + " takes no --bounds");
    if (cmd == "bracket") return bracket_();
    if (cmd == "product") return product_();
    if (cmd == "cocycle") return cocycle_();
    if (cmd == "act") return act_();
    if (cmd == "grade") return grade_();
    if (cmd == "span-probe") return span_();
    if (cmd == "verma") return verma_();
    if (cmd == "act-verma") return act_verma_();
    if (cmd == "singular") return singular_();
    if (cmd == "hseq") return hseq_();
    if (cmd == "tensor-act") return tensor_act_();
    if (cmd == "tensor-probe") return tensor_probe_();
    if (cmd == "intertwiner") return intertwiner_();
    if (cmd == "verify") return verify_();
    throw UsageError("unknown command " + cmd);
  }

 private:
  int emit(const ordered_json& result, const std::string& text, int code = 0) {
    if (o_.json) {
      ordered_json out = {{"schema", 1}, {"command", cmd_}, {"result", result}};
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << "\n";
    }
    return code;
  }

  const std::string& arg(std::size_t i) const {
    if (i >= o_.args.size()) throw UsageError(cmd_ + " expects more arguments");
    return o_.args[i];
  }
  void expect_args(std::size_t n) const {
    if (o_.args.size() != n)
      throw UsageError(cmd_ + " expects " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                       std::to_string(o_.args.size()));
  }

  DiffOp op_(const std::string& s) const { return parse_operator(s, params_, o_.rank); }
  Scalar scalar_(const std::string& s) const { return parse_scalar(s, params_); }

  OmegaSpec omega_(const std::string& lambda_text, int eps, bool allow_rank) const {
    std::vector<Scalar> lambda;
    for (const auto& part : split(lambda_text, ',')) lambda.push_back(scalar_(trim(part)));
    if (lambda.empty()) throw UsageError("--lambda is empty");
    const std::string fam = o_.family;
    if (fam == "Dnu" || (fam == "D" && allow_rank && o_.rank > 1)) {
      if (lambda.size() == 1) lambda.assign(static_cast<std::size_t>(o_.rank), lambda[0]);
      if (static_cast<int>(lambda.size()) != o_.rank) throw UsageError("--lambda needs one entry per variable");
      return OmegaSpec::dnu(lambda, eps);
    }
    if (lambda.size() != 1) throw UsageError("--lambda takes one value for family " + fam);
    if (o_.rank != 1) throw UsageError("family " + fam + " has rank 1");
    if (fam == "D") return OmegaSpec::d_module(lambda[0], eps);
    if (fam == "Vir") return OmegaSpec::vir(lambda[0], scalar_(o_.alpha));
    if (fam == "HV") return OmegaSpec::hv(lambda[0], scalar_(o_.alpha), scalar_(o_.beta));
    throw UsageError("unknown family " + fam + " (expected D, Vir, HV or Dnu)");
  }

  HWSpec hw_() const {
    const Scalar c = scalar_(o_.c);
    if (o_.phi.empty()) return HWSpec::with_weights(c, {});
    return HWSpec(c, parse_quasipolynomial(o_.phi, params_));
  }

  int bracket_() {
    expect_args(2);
    DiffOp r = bracket(op_(arg(0)), op_(arg(1)));
    return emit(to_json(r), r.to_string());
  }

  int product_() {
    expect_args(2);
    DiffOp a = op_(arg(0)), b = op_(arg(1));
    if (!a.central_coeff().is_zero() || !b.central_coeff().is_zero())
      throw ContextMismatch("the associative product is defined on the non-central algebra only");
    DiffOp r = assoc_product(a.without_central(), b.without_central());
    return emit(to_json(r), r.to_string());
  }

  int cocycle_() {
    expect_args(2);
    if (o_.rank != 1) throw UsageError("cocycle is defined for rank 1 only");
    Scalar r = cocycle_phi(op_(arg(0)), op_(arg(1)));
    return emit(to_json(r), r.to_string());
  }

  int act_() {
    expect_args(2);
    OmegaSpec spec = omega_(o_.lambda, o_.eps, true);
    DiffOp d = op_(arg(0));
    PolyVec f = parse_polynomial(arg(1), params_, spec.rank);
    PolyVec r = act_embedded(spec, d, f);
    return emit(to_json(r), r.to_string());
  }

  int grade_() {
    expect_args(1);
    ordered_json arr = ordered_json::array();
    std::string text;
    for (const auto& [m, part] : grade_components(op_(arg(0)))) {
      arr.push_back({{"degree", m}, {"component", to_json(part)}});
      text += cli::degree_text(m) + ": " + part.to_string() + "\n";
    }
    return emit(arr, text);
  }

  int span_() {
    if (o_.args.empty()) throw UsageError("span-probe expects at least one generator");
    auto b = parse_bounds(o_.bounds, {{"m", 2}, {"n", 3}, {"depth", 8}});
    std::vector<DiffOp> gens;
    for (const auto& s : o_.args) gens.push_back(op_(s));
    auto r = generated_span_probe(gens, SpanBounds{b["m"], b["n"], b["depth"]});
    std::string text = "verdict: " + std::string(r.missing.empty() ? "complete" : "incomplete") + "\n";
    text += "reached: " + std::to_string(r.reached.size()) + " of " +
            std::to_string(r.reached.size() + r.missing.size()) + "\n";
    text += "rounds: " + std::to_string(r.rounds) + "\n";
    text += "span_dim: " + std::to_string(r.span_dim) + "\n";
    text += "missing:";
    if (r.missing.empty()) text += " none";
    for (const auto& k : r.missing) text += " " + cli::key_text(k);
    return emit(to_json(r), text);
  }

  int verma_() {
    expect_args(0);
    auto b = parse_bounds(o_.bounds, {{"L", 2}, {"N", 1}});
    auto tv = verma_basis(hw_(), b["L"], b["N"]);
    ordered_json levels = ordered_json::array();
    std::string text;
    for (int k = 0; k <= b["L"]; ++k) {
      ordered_json mons = ordered_json::array();
      std::string line;
      for (const auto& m : tv.slice(k)) {
        mons.push_back(to_json(m));
        line += (line.empty() ? "" : ", ") + to_string(m);
      }
      levels.push_back({{"level", k}, {"dim", mons.size()}, {"basis", mons}});
      text += "level " + std::to_string(k) + " (" + std::to_string(mons.size()) + "): " + line + "\n";
    }
    text += "total: " + std::to_string(tv.basis().size());
    return emit({{"L", b["L"]}, {"N", b["N"]}, {"dim", tv.basis().size()}, {"levels", levels}}, text);
  }

  int act_verma_() {
    expect_args(2);
    if (o_.rank != 1) throw UsageError("act-verma is defined for rank 1 only");
    HWSpec hw = hw_();
    VermaAction action(hw);
    DiffOp d = op_(arg(0));
    VermaElem v = parse_verma(arg(1), params_, action);
    VermaElem r;
    if (o_.bounds.empty()) {
      r = action.act(d, v);
    } else {
      auto b = parse_bounds(o_.bounds, {{"L", 2}, {"N", 1}});
      r = act_verma(verma_basis(hw, b["L"], b["N"]), d, v);
    }
    return emit(to_json(r), r.to_string());
  }

  int singular_() {
    expect_args(0);
    auto b = parse_bounds(o_.bounds, {{"L", 2}, {"N", 1}, {"k", 1}, {"M", 3}});
    auto tv = verma_basis(hw_(), b["L"], b["N"]);
    auto sing = singular_vectors(tv, b["k"], b["M"]);
    auto dims = weight_space_dims(tv, sing);
    ordered_json vecs = ordered_json::array();
    std::string text = "level " + std::to_string(b["k"]) + ": " + std::to_string(sing.size()) + " of " +
                       std::to_string(tv.slice(b["k"]).size()) + "\n";
    for (const auto& v : sing) {
      vecs.push_back(to_json(v));
      text += "  " + v.to_string() + "\n";
    }
    text += "quotient dims:";
    for (auto d : dims) text += " " + std::to_string(d);
    const std::string cert = "bounded certificate: level <= " + std::to_string(b["L"]) + ", order <= " +
                             std::to_string(b["N"]) + ", annihilation checked up to D^" + std::to_string(b["M"]);
    text += "\n" + cert;
    return emit({{"level", b["k"]},
                 {"slice_dim", tv.slice(b["k"]).size()},
                 {"vectors", vecs},
                 {"quotient_dims", dims},
                 {"bounds", {{"L", b["L"]}, {"N", b["N"]}, {"M", b["M"]}}},
                 {"note", cert}},
                text);
  }

  int hseq_() {
    expect_args(0);
    auto b = parse_bounds(o_.bounds, {{"n", 8}});
    HWSpec hw = hw_();
    ordered_json arr = ordered_json::array();
    std::string text;
    for (int n = 0; n <= b["n"]; ++n) {
      Scalar h = hw.h(static_cast<std::size_t>(n));
      arr.push_back(to_json(h));
      text += "h" + std::to_string(n) + " = " + h.to_string() + "\n";
    }
    text += "note: h0 is the eigenvalue of t^0*D^0 on v";
    return emit({{"c", to_json(hw.c())}, {"h", arr}, {"h0_convention", "eigenvalue of t^0*D^0 on v"}}, text);
  }

  TensorSpec tensor_spec_(const std::string& lambda, int eps, int L, int N) const {
    if (o_.rank != 1) throw UsageError("tensor modules are defined for rank 1 only");
    return TensorSpec(omega_(lambda, eps, false), verma_basis(hw_(), L, N));
  }

  int tensor_act_() {
    expect_args(2);
    auto b = parse_bounds(o_.bounds, {{"L", 2}, {"N", 1}});
    TensorSpec spec = tensor_spec_(o_.lambda, o_.eps, b["L"], b["N"]);
    VermaAction action(spec.hw.spec());
    DiffOp d = op_(arg(0));
    TensorElem w = parse_tensor(arg(1), params_, action);
    TensorElem r = act_tensor(spec, d, w);
    return emit(to_json(r), r.to_string());
  }

  static std::string probe_text(const ProbeReport& r) {
    std::string text = std::string("verdict: ") + (r.cyclic ? "cyclic within bounds" : "proper closure found") + "\n";
    text += "bounded_dim: " + std::to_string(r.bounded_dim) + "\n";
    text += "seeds: " + std::to_string(r.seeds);
    if (r.seed) {
      text += "\nseed: " + TensorElem::monomial(r.seed->first, r.seed->second).to_string();
      text += "\nclosure_dim: " + std::to_string(r.closure_dim);
      text += std::string("\ncontains_unit: ") + (r.contains_unit ? "yes" : "no");
      for (const auto& w : r.witness) text += "\n  " + w.to_string();
    }
    return text;
  }

  int tensor_probe_() {
    expect_args(0);
    auto b = parse_bounds(o_.bounds, {{"d", 3}, {"L", 1}, {"N", 1}, {"m", 4}, {"n", 2}});
    TensorSpec spec = tensor_spec_(o_.lambda, o_.eps, b["L"], b["N"]);
    auto r = irreducibility_probe(spec, ProbeBounds{b["d"], b["m"], b["n"]});
    return emit(to_json(r), probe_text(r));
  }

  int intertwiner_() {
    expect_args(0);
    auto b = parse_bounds(o_.bounds, {{"d", 3}, {"L", 1}, {"N", 1}, {"m", 3}, {"n", 2}});
    TensorSpec a = tensor_spec_(o_.lambda, o_.eps, b["L"], b["N"]);
    TensorSpec other = tensor_spec_(o_.lambda2.empty() ? o_.lambda : o_.lambda2, o_.eps2 < 0 ? o_.eps : o_.eps2,
                                     b["L"], b["N"]);
    auto r = intertwiner_system(a, other, ProbeBounds{b["d"], b["m"], b["n"]});
    std::string text = "dim: " + std::to_string(r.dim) + "\nunknowns: " + std::to_string(r.unknowns) +
                       "\nequations: " + std::to_string(r.equations) + "\nrank: " + std::to_string(r.rank) +
                       "\nidentity_solves: " + (r.identity_solves ? "yes" : "no");
    return emit(to_json(r), text);
  }

  int verify_() {
    expect_args(0);
    auto b = parse_bounds(o_.bounds, {{"m", 3}, {"n", 3}, {"deg", 4}});
    std::vector<std::string> names;
    if (o_.suite == "all") {
      names = suite_names();
    } else {
      for (const auto& s : split(o_.suite, ',')) {
        const std::string name = trim(s);
        if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
          throw UsageError("unknown suite " + name);
        names.push_back(name);
      }
      std::sort(names.begin(), names.end());
      names.erase(std::unique(names.begin(), names.end()), names.end());
    }
    ordered_json arr = ordered_json::array();
    std::string text;
    std::size_t passed = 0;
    for (const auto& name : names) {
      SuiteResult r = run_suite(name, VerifyBounds{b["m"], b["n"], b["deg"], o_.seed});
      passed += r.ok ? 1 : 0;
      arr.push_back(to_json(r, o_.timings));
      text += std::string(r.ok ? "PASS " : "FAIL ") + r.name + " (" + std::to_string(r.checks) + " checks";
      if (!r.ok) text += ", " + std::to_string(r.failures) + " failures";
      if (o_.timings) text += ", " + std::to_string(r.seconds) + " s";
      text += ")";
      if (!r.detail.empty()) text += ": " + r.detail;
      text += "\n";
    }
    text += std::to_string(passed) + " of " + std::to_string(names.size()) + " suites passed";
    const bool ok = passed == names.size();
    return emit({{"ok", ok}, {"suites", arr}}, text, ok ? 0 : 1);
  }

  Options o_;
  ParamDecl params_;
  std::string cmd_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with differential operator algebras and their modules"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--rank", o.rank, "Number of variables (rank nu)")->envname("WEYLMOD_RANK");
  app.add_option("--params", o.params, "Parameter declarations, e.g. \"a,mu:unit\"");
  app.add_flag("--json", o.json, "JSON output")->envname("WEYLMOD_JSON");
  app.add_option("--bounds", o.bounds, "Bounds as k=v,k=v");
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_option("--family", o.family, "Omega family: D, Vir, HV or Dnu");
  app.add_option("--lambda", o.lambda, "lambda (comma separated for Dnu)");
  app.add_option("--eps", o.eps, "epsilon (0 or 1)");
  app.add_option("--alpha", o.alpha, "alpha for Vir and HV");
  app.add_option("--beta", o.beta, "beta for HV");
  app.add_option("--lambda2", o.lambda2, "lambda of the second module (intertwiner)");
  app.add_option("--eps2", o.eps2, "epsilon of the second module (intertwiner)");
  app.add_option("--c", o.c, "Central charge of the highest weight module");
  app.add_option("--phi", o.phi, "Quasipolynomial phi; free weights h_n when omitted");

  struct Cmd {
    const char* name;
    const char* help;
  };
  const std::vector<Cmd> cmds{
      {"bracket", "Lie bracket of two operators"},
      {"product", "Associative product of two operators"},
      {"cocycle", "Cocycle phi of two operators"},
      {"act", "Action of an operator on a polynomial in Omega"},
      {"grade", "Homogeneous components of an operator"},
      {"span-probe", "Closure of generators under the bracket"},
      {"verma", "PBW basis of a truncated Verma module"},
      {"act-verma", "Action of an operator on a Verma module element"},
      {"singular", "Singular vectors at one level"},
      {"hseq", "Highest weights h_n from phi"},
      {"tensor-act", "Action on Omega tensor V"},
      {"tensor-probe", "Bounded irreducibility probe of Omega tensor V"},
      {"intertwiner", "Dimension of bounded intertwiner spaces"},
      {"verify", "Run verification suites"},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("args", o.args, "Expressions");
    if (std::string(c.name) == "verify") {
      sub->add_option("--suite", o.suite, "Suite name, comma list or all");
      sub->add_flag("--timings", o.timings, "Report run times");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Runner runner(o);
    return runner.run(app.get_subcommands().front()->get_name());
  } catch (const ParseError& e) {
    std::cerr << "weylmod: parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "weylmod: usage error: " << e.what() << "\n";
  } catch (const NotInvertible& e) {
    std::cerr << "weylmod: not invertible: " << e.what() << "\n";
  } catch (const ContextMismatch& e) {
    std::cerr << "weylmod: context mismatch: " << e.what() << "\n";
  } catch (const LevelOverflow& e) {
    std::cerr << "weylmod: level overflow: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "weylmod: domain error: " << e.what() << "\n";
  }
  return 2;
}
