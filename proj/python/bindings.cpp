#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "fint/cli.hpp"
#include "fint/parser.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_fint, m) {
  m.doc() = "exact first integrals of volume-preserving flows";

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = fint::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"),
      "Run one command line (without the program name); returns "
      "(exit_code, stdout, stderr).");

  m.def(
      "simplify",
      [](const std::string& text, const std::vector<std::string>& vars) {
        return fint::print_expr(fint::simplify(fint::parse_expr(text, vars)),
                                vars);
      },
      py::arg("text"), py::arg("vars"),
      "Canonical form of an expression over the given variables.");

  m.def(
      "evaluate",
      [](const std::string& text, const std::vector<std::string>& vars,
         const std::vector<double>& point) {
        return fint::evaluate(fint::parse_expr(text, vars), point);
      },
      py::arg("text"), py::arg("vars"), py::arg("point"),
      "Numeric value of an expression at a point (one entry per variable).");
}
