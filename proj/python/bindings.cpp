#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weylmod/errors.hpp"
#include "weylmod/liealg.hpp"
#include "weylmod/omega.hpp"
#include "weylmod/parse.hpp"
#include "weylmod/verify.hpp"

namespace py = pybind11;
using namespace weylmod;

namespace {

// Same defaults as the CLI: lambda (a unit), alpha, beta and c are always declared.
ParamDecl decl(const std::string& extra) {
  ParamDecl p = ParamDecl::parse("lambda:unit,alpha,beta,c");
  if (!extra.empty()) {
    const ParamDecl user = ParamDecl::parse(extra);
    for (const auto& [name, inv] : user.params()) p.declare(name, inv);
  }
  return p;
}

DiffOp parse_op(const std::string& text, int rank, const std::string& params) {
  return parse_operator(text, decl(params), rank);
}

}  // namespace

PYBIND11_MODULE(_weylmod, m) {
  m.doc() = "Exact differential operator algebras: brackets, module actions, verification suites";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ContextMismatch>(m, "ContextMismatch", base.ptr());
  py::register_exception<NotInvertible>(m, "NotInvertible", base.ptr());
  py::register_exception<LevelOverflow>(m, "LevelOverflow", base.ptr());

  py::class_<DiffOp>(m, "Operator")
      .def(py::init(&parse_op), py::arg("text"), py::arg("rank") = 1, py::arg("params") = "")
      .def_property_readonly("rank", [](const DiffOp& d) { return d.ctx().rank(); })
      .def("bracket", [](const DiffOp& a, const DiffOp& b) { return bracket(a, b); })
      .def("product",
           [](const DiffOp& a, const DiffOp& b) {
             if (!a.central_coeff().is_zero() || !b.central_coeff().is_zero())
               throw ContextMismatch("the associative product is defined on the non-central algebra only");
             return assoc_product(a.without_central(), b.without_central()).in_context(a.ctx());
           })
      .def("cocycle", [](const DiffOp& a, const DiffOp& b) { return cocycle_phi(a, b).to_string(); })
      .def("grade",
           [](const DiffOp& a) {
             std::vector<std::pair<std::vector<int>, DiffOp>> out;
             for (const auto& [k, v] : grade_components(a)) out.emplace_back(k, v);
             return out;
           })
      .def("__add__", [](const DiffOp& a, const DiffOp& b) { return a + b; })
      .def("__sub__", [](const DiffOp& a, const DiffOp& b) { return a - b; })
      .def("__neg__", [](const DiffOp& a) { return -a; })
      .def("__eq__", [](const DiffOp& a, const DiffOp& b) { return a == b; })
      .def("__bool__", [](const DiffOp& a) { return !a.is_zero(); })
      .def("__str__", &DiffOp::to_string)
      .def("__repr__", [](const DiffOp& a) { return "Operator('" + a.to_string() + "')"; });

  m.def(
      "act",
      [](const std::string& op, const std::string& f, const std::string& lambda, int eps, const std::string& params) {
        const ParamDecl p = decl(params);
        OmegaSpec spec = OmegaSpec::d_module(parse_scalar(lambda, p), eps);
        return act(spec, parse_operator(op, p, 1), parse_polynomial(f, p, 1)).to_string();
      },
      py::arg("op"), py::arg("f"), py::arg("lam") = "lambda", py::arg("eps") = 1, py::arg("params") = "",
      "Action of a rank-1 operator on a polynomial in Omega(lambda, eps).");

  m.def(
      "h_sequence",
      [](const std::string& phi, int n, const std::string& params) {
        HWSpec hw(Scalar(0), parse_quasipolynomial(phi, decl(params)));
        std::vector<std::string> out;
        for (int i = 0; i <= n; ++i) out.push_back(hw.h(static_cast<std::size_t>(i)).to_string());
        return out;
      },
      py::arg("phi"), py::arg("n"), py::arg("params") = "", "h_0 .. h_n from a quasipolynomial phi.");

  m.def("suite_names", &suite_names);
  m.def(
      "verify",
      [](const std::string& name, int bm, int bn, int deg) {
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = run_suite(name, VerifyBounds{bm, bn, deg});
        }
        py::dict d;
        d["name"] = r.name;
        d["ok"] = r.ok;
        d["checks"] = r.checks;
        d["failures"] = r.failures;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("suite"), py::arg("m") = 3, py::arg("n") = 3, py::arg("deg") = 4);
}
