#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "weylmod/parse.hpp"

namespace weylmod::testing {

struct CorpusLine {
  std::string mode;
  int rank = 1;
  std::string text;
};

inline const char* corpus_params() { return "lambda:unit,mu:unit,a,b,c,a1,a2,h0,h1,h2,h3,h4"; }

inline std::vector<CorpusLine> load_corpus(const std::string& path) {
  std::ifstream in(path);
  std::vector<CorpusLine> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    CorpusLine c;
    ls >> c.mode >> c.rank;
    std::getline(ls, c.text);
    c.text.erase(0, c.text.find_first_not_of(' '));
    out.push_back(c);
  }
  return out;
}

// Parses, prints, reparses. Returns an empty string on success, otherwise a
// description of the mismatch.
inline std::string roundtrip(const CorpusLine& c) {
  const ParamDecl params = ParamDecl::parse(corpus_params());
  auto check = [&](const auto& a, const auto& b, const std::string& printed) -> std::string {
    if (a == b) return {};
    return c.mode + " '" + c.text + "' printed as '" + printed + "' reparses to a different value";
  };
  if (c.mode == "scalar") {
    auto a = parse_scalar(c.text, params);
    return check(a, parse_scalar(a.to_string(), params), a.to_string());
  }
  if (c.mode == "operator") {
    auto a = parse_operator(c.text, params, c.rank);
    return check(a, parse_operator(a.to_string(), params, c.rank), a.to_string());
  }
  if (c.mode == "polynomial") {
    auto a = parse_polynomial(c.text, params, c.rank);
    return check(a, parse_polynomial(a.to_string(), params, c.rank), a.to_string());
  }
  if (c.mode == "quasi") {
    auto a = parse_quasipolynomial(c.text, params);
    return check(a, parse_quasipolynomial(a.to_string(), params), a.to_string());
  }
  HWSpec hw = HWSpec::symbolic();
  VermaAction act(hw);
  if (c.mode == "verma") {
    auto a = parse_verma(c.text, params, act);
    return check(a, parse_verma(a.to_string(), params, act), a.to_string());
  }
  if (c.mode == "tensor") {
    auto a = parse_tensor(c.text, params, act);
    return check(a, parse_tensor(a.to_string(), params, act), a.to_string());
  }
  return "unknown mode " + c.mode;
}

}  // namespace weylmod::testing
