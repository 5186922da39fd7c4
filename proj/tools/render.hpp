#pragma once

#include <json.hpp>

#include "weylmod/diffop.hpp"
#include "weylmod/liealg.hpp"
#include "weylmod/polynomial.hpp"
#include "weylmod/quasipoly.hpp"
#include "weylmod/tensor.hpp"
#include "weylmod/verify.hpp"
#include "weylmod/verma.hpp"

namespace weylmod::cli {

using nlohmann::ordered_json;

// JSON mirrors of the core types. Coefficients are exact strings "p/q".
ordered_json to_json(const Scalar& s);
ordered_json to_json(const OpKey& k);
ordered_json to_json(const DiffOp& d);
ordered_json to_json(const Polynomial& p);
ordered_json to_json(const Quasipolynomial& q);
ordered_json to_json(const PbwMonomial& m);
ordered_json to_json(const VermaElem& v);
ordered_json to_json(const TensorElem& w);
ordered_json to_json(const SpanProbeResult& r);
ordered_json to_json(const ProbeReport& r);
ordered_json to_json(const IntertwinerReport& r);
ordered_json to_json(const SuiteResult& r, bool timings);

/// "t^2*D^3" style text of a basis key in the given rank.
std::string key_text(const OpKey& k);
/// "3" for rank 1, "(1,-2)" otherwise.
std::string degree_text(const std::vector<int>& m);

}  // namespace weylmod::cli
