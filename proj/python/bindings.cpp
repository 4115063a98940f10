#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "formcalc/cohomology.hpp"
#include "formcalc/error.hpp"
#include "formcalc/form.hpp"
#include "formcalc/geometry.hpp"
#include "formcalc/integration.hpp"
#include "formcalc/io.hpp"
#include "formcalc/parser.hpp"
#include "formcalc/poincare.hpp"
#include "formcalc/smooth_map.hpp"

namespace py = pybind11;
using namespace formcalc;

namespace {

QuadratureSpec quad(int points, int panels) {
  QuadratureSpec s{points, panels};
  s.validate();
  return s;
}

Loop loop_from_json(const std::string& text) {
  const Chain c = chain_from_json(text);
  if (c.terms().size() != 1) throw InputError("a loop is a chain with one 1-cell");
  return Loop(c.terms().front().cell);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differential forms, integration over chains and Cech cohomology";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());

  py::class_<DifferentialForm>(m, "Form")
      .def_property_readonly("dimension", &DifferentialForm::dimension)
      .def_property_readonly("degree", &DifferentialForm::degree)
      .def("is_zero", &DifferentialForm::is_zero)
      .def("format", &DifferentialForm::to_string, py::arg("names"))
      .def("__str__", [](const DifferentialForm& a) { return a.to_string(); })
      .def("__repr__", [](const DifferentialForm& a) { return "Form(" + a.to_string() + ")"; })
      .def("__eq__", [](const DifferentialForm& a, const DifferentialForm& b) { return a == b; })
      .def("__add__", [](const DifferentialForm& a, const DifferentialForm& b) { return a + b; })
      .def("__sub__", [](const DifferentialForm& a, const DifferentialForm& b) { return a - b; })
      .def("__neg__", [](const DifferentialForm& a) { return -a; })
      .def("__xor__", [](const DifferentialForm& a, const DifferentialForm& b) { return wedge(a, b); });

  m.def("parse_form", py::overload_cast<std::string_view, int>(&parse_form), py::arg("text"), py::arg("dim"));
  m.def("parse_form", py::overload_cast<std::string_view, const std::vector<std::string>&>(&parse_form), py::arg("text"),
        py::arg("names"));
  m.def("d", &exterior_derivative, py::arg("form"));
  m.def("wedge", &wedge, py::arg("a"), py::arg("b"));
  m.def("is_closed", &is_closed, py::arg("form"));
  m.def("primitive", &primitive, py::arg("form"));
  m.def(
      "pullback",
      [](const std::string& map, const DifferentialForm& a) { return pullback_form(parse_map(map), a); },
      py::arg("map"), py::arg("form"));
  m.def(
      "evaluate",
      [](const DifferentialForm& a, const std::vector<double>& point) {
        std::map<std::string, double> out;
        for (const auto& [index, f] : a.terms()) {
          out[DifferentialForm::monomial(a.dimension(), index).to_string()] = evaluate(f, point);
        }
        return out;
      },
      py::arg("form"), py::arg("point"));

  m.def(
      "integrate",
      [](const DifferentialForm& a, const std::string& chain, int points, int panels) {
        return integrate_chain(a, chain_from_json(chain), quad(points, panels));
      },
      py::arg("form"), py::arg("chain_json"), py::arg("quad") = 16, py::arg("panels") = 1);
  m.def(
      "stokes",
      [](const DifferentialForm& a, const std::string& chain, int points, int panels) {
        const StokesResult r = stokes_check(a, chain_from_json(chain), quad(points, panels));
        return py::make_tuple(r.lhs, r.rhs, r.residual);
      },
      py::arg("form"), py::arg("chain_json"), py::arg("quad") = 16, py::arg("panels") = 1);

  m.def(
      "cech_cohomology",
      [](int vertices, const std::vector<std::vector<int>>& simplices) {
        return cech_cohomology(Nerve(vertices, simplices));
      },
      py::arg("vertices"), py::arg("simplices"));
  m.def("sphere_betti", &sphere_betti, py::arg("n"));
  m.def(
      "mv_solve",
      [](const std::vector<std::optional<long>>& slots, std::optional<std::vector<std::optional<long>>> ranks) {
        ExactSequenceProblem p{slots, ranks ? *ranks : std::vector<std::optional<long>>(slots.empty() ? 0 : slots.size() - 1)};
        const ExactSequenceSolution s = mv_solve(p);
        const char* status = s.status == SolveStatus::Solved           ? "solved"
                             : s.status == SolveStatus::UnderDetermined ? "under-determined"
                                                                         : "inconsistent";
        return py::make_tuple(status, s.slots, s.ranks);
      },
      py::arg("slots"), py::arg("ranks") = py::none());

  m.def(
      "winding_number",
      [](const std::string& loop, int points, int panels) {
        return winding_number(loop_from_json(loop), quad(points, panels)).value;
      },
      py::arg("loop_json"), py::arg("quad") = 16, py::arg("panels") = 4);
  m.def(
      "linking_number",
      [](const std::string& a, const std::string& b, int points, int panels) {
        return linking_number(loop_from_json(a), loop_from_json(b), quad(points, panels)).value;
      },
      py::arg("loop1_json"), py::arg("loop2_json"), py::arg("quad") = 16, py::arg("panels") = 2);
  m.def(
      "gauss_bonnet",
      [](const std::string& surface, int chi, int points) {
        const GaussBonnetResult r = gauss_bonnet_check(chain_from_json(surface), chi, quad(points, 1));
        return py::make_tuple(r.integral, r.expected, r.residual);
      },
      py::arg("surface_json"), py::arg("chi"), py::arg("quad") = 16);
}
