#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "homgrow/bounds.hpp"
#include "homgrow/census.hpp"
#include "homgrow/cli.hpp"
#include "homgrow/cover.hpp"
#include "homgrow/epimorphism.hpp"
#include "homgrow/errors.hpp"
#include "homgrow/presentation.hpp"
#include "homgrow/series.hpp"

namespace py = pybind11;
using namespace homgrow;

namespace {

// Python ints take arbitrary size, so big values cross as decimal strings.
py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

Epimorphism epi_for(const Presentation& pres, std::uint32_t p, const std::string& epi) {
  if (epi.empty() || epi == "full") return full_mod_p_epi(pres, p);
  Epimorphism e = parse_epimorphism(epi, p, pres.generator_count());
  validate_epimorphism(pres, e);
  return e;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mod-p homology of finite abelian covers, level bounds and subgroup counts";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
  py::register_exception<InvariantViolation>(m, "InvariantViolation");

  py::class_<Presentation>(m, "Presentation")
      .def_readonly("generators", &Presentation::generators)
      .def_property_readonly("relator_count", &Presentation::relator_count)
      .def("__str__", [](const Presentation& p) { return format_presentation(p); });

  py::class_<ComplexBetti>(m, "Betti")
      .def_readonly("b0", &ComplexBetti::b0)
      .def_readonly("b1", &ComplexBetti::b1)
      .def_readonly("b2", &ComplexBetti::b2)
      .def_readonly("p", &ComplexBetti::p)
      .def("__repr__", [](const ComplexBetti& b) {
        return "Betti(b0=" + std::to_string(b.b0) + ", b1=" + std::to_string(b.b1) +
               ", b2=" + std::to_string(b.b2) + ", p=" + std::to_string(b.p) + ")";
      });

  m.def("parse_presentation", [](const std::string& text) { return parse_presentation(text); },
        py::arg("text"));
  m.def("load_presentation", &load_presentation, py::arg("path"));
  m.def("complex_betti", &complex_betti, py::arg("presentation"), py::arg("p") = 2);
  m.def(
      "cover_betti",
      [](const Presentation& pres, std::uint32_t p, const std::string& epi,
         std::uint64_t budget) {
        return cover_betti(build_cover(pres, epi_for(pres, p, epi), budget));
      },
      py::arg("presentation"), py::arg("p") = 2, py::arg("epi") = "full",
      py::arg("budget") = kDefaultCellBudget);

  m.def(
      "level_bound",
      [](std::uint64_t b1, std::uint64_t b2, std::uint64_t n, std::uint64_t ell,
         std::uint32_t p) { return to_py(thm16_bound({b1, b2, n, ell, p})); },
      py::arg("b1"), py::arg("b2"), py::arg("n"), py::arg("level"), py::arg("p") = 2);
  m.def(
      "level_sweep",
      [](std::uint64_t b1, std::uint64_t b2, std::uint64_t n, std::uint32_t p) {
        py::list out;
        for (const BigInt& v : level_sweep(b1, b2, n, p)) out.append(to_py(v));
        return out;
      },
      py::arg("b1"), py::arg("b2"), py::arg("n"), py::arg("p") = 2);

  m.def(
      "series",
      [](const Presentation& pres, std::uint32_t p, std::size_t steps, std::uint64_t budget) {
        const GrowthTrace t = run_series(pres, p, steps, budget);
        py::list out;
        for (const SeriesStep& s : t.steps) {
          py::dict d;
          d["step"] = s.i;
          d["index"] = to_py(s.index(p));
          d["b1"] = s.b1;
          d["b2_complex"] = s.b2;
          d["predicted_floor"] = s.predicted ? py::object(to_py(*s.predicted)) : py::none();
          out.append(d);
        }
        return py::make_tuple(out, t.stop_reason);
      },
      py::arg("presentation"), py::arg("p") = 2, py::arg("steps") = 3,
      py::arg("budget") = kDefaultCellBudget);

  m.def(
      "subgroup_counts",
      [](const Presentation& pres, std::size_t n_max) {
        return low_index(pres, n_max).cumulative;
      },
      py::arg("presentation"), py::arg("n_max"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one homgrow command; returns (exit code, stdout, stderr).");
}
