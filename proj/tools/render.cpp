#include "render.hpp"

namespace weylmod::cli {

ordered_json to_json(const Scalar& s) {
  ordered_json monos = ordered_json::array();
  for (const auto& [mono, coeff] : s.terms()) {
    ordered_json exps = ordered_json::object();
    for (const auto& p : mono) exps[p.name] = p.exp;
    monos.push_back({{"coeff", weylmod::to_string(coeff)}, {"exps", exps}});
  }
  return {{"monomials", monos}, {"text", s.to_string()}};
}

ordered_json to_json(const OpKey& k) { return {{"m", k.m}, {"n", k.n}}; }

ordered_json to_json(const DiffOp& d) {
  ordered_json terms = ordered_json::array();
  // Same order as the canonical printer: descending (m, n).
  for (auto it = d.terms().rbegin(); it != d.terms().rend(); ++it)
    terms.push_back({{"m", it->first.m}, {"n", it->first.n}, {"coeff", to_json(it->second)}});
  ordered_json out = {{"rank", d.ctx().rank()}, {"central_extension", d.ctx().central()}, {"terms", terms}};
  if (d.ctx().central()) out["central"] = to_json(d.central_coeff());
  out["text"] = d.to_string();
  return out;
}

ordered_json to_json(const Polynomial& p) {
  ordered_json monos = ordered_json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    monos.push_back({{"exps", it->first}, {"coeff", to_json(it->second)}});
  return {{"nvars", p.nvars()}, {"monomials", monos}, {"text", p.to_string()}};
}

ordered_json to_json(const Quasipolynomial& q) {
  ordered_json terms = ordered_json::array();
  for (const auto& [p, a] : q.terms()) terms.push_back({{"poly", to_json(p)}, {"exponent", to_json(a)}});
  return {{"terms", terms}, {"text", q.to_string()}};
}

ordered_json to_json(const PbwMonomial& m) {
  ordered_json gens = ordered_json::array();
  for (const auto& [j, n] : m) gens.push_back({{"j", j}, {"n", n}});
  return {{"generators", gens}, {"level", level(m)}, {"text", weylmod::to_string(m)}};
}

ordered_json to_json(const VermaElem& v) {
  ordered_json terms = ordered_json::array();
  for (const auto& [m, c] : v.terms()) terms.push_back({{"monomial", to_json(m)}, {"coeff", to_json(c)}});
  return {{"terms", terms}, {"text", v.to_string()}};
}

ordered_json to_json(const TensorElem& w) {
  ordered_json terms = ordered_json::array();
  for (const auto& [k, c] : w.terms())
    terms.push_back({{"x", k.first}, {"monomial", to_json(k.second)}, {"coeff", to_json(c)}});
  return {{"terms", terms}, {"text", w.to_string()}};
}

ordered_json to_json(const SpanProbeResult& r) {
  ordered_json reached = ordered_json::array(), missing = ordered_json::array();
  for (const auto& k : r.reached) reached.push_back(key_text(k));
  for (const auto& k : r.missing) missing.push_back(key_text(k));
  return {{"verdict", r.missing.empty() ? "complete" : "incomplete"},
          {"rounds", r.rounds},
          {"span_dim", r.span_dim},
          {"reached", reached},
          {"missing", missing}};
}

ordered_json to_json(const ProbeReport& r) {
  ordered_json out = {{"verdict", r.cyclic ? "cyclic within bounds" : "proper closure found"},
                      {"bounds", {{"d", r.bounds.max_deg}, {"m", r.bounds.gen_m}, {"n", r.bounds.gen_n}}},
                      {"bounded_dim", r.bounded_dim},
                      {"seeds", r.seeds}};
  if (r.seed) {
    out["seed"] = {{"x", r.seed->first}, {"monomial", to_json(r.seed->second)}};
  } else {
    out["seed"] = nullptr;
  }
  out["closure_dim"] = r.closure_dim;
  out["contains_unit"] = r.contains_unit;
  ordered_json wit = ordered_json::array();
  for (const auto& w : r.witness) wit.push_back(w.to_string());
  out["witness"] = wit;
  return out;
}

ordered_json to_json(const IntertwinerReport& r) {
  return {{"dim", r.dim},
          {"unknowns", r.unknowns},
          {"equations", r.equations},
          {"rank", r.rank},
          {"identity_solves", r.identity_solves}};
}

ordered_json to_json(const SuiteResult& r, bool timings) {
  ordered_json out = {{"name", r.name}, {"ok", r.ok}, {"checks", r.checks}, {"failures", r.failures},
                      {"detail", r.detail}};
  if (timings) out["seconds"] = std::to_string(r.seconds);
  return out;
}

std::string key_text(const OpKey& k) {
  DiffOp d(AlgebraCtx(static_cast<int>(k.m.size()), false));
  d.add_term(k, Scalar(1));
  return d.to_string();
}

std::string degree_text(const std::vector<int>& m) {
  if (m.size() == 1) return std::to_string(m[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

}  // namespace weylmod::cli
