#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparsedom/checks.hpp"
#include "sparsedom/domination.hpp"
#include "sparsedom/rng.hpp"
#include "sparsedom/scenario.hpp"

namespace py = pybind11;
using namespace sparsedom;

namespace {

Grid make_grid(int dim, long cells, double h, double origin) {
  Grid g;
  g.dim = dim;
  g.cells = {cells, dim == 2 ? cells : 1};
  g.h = h;
  g.origin = {origin, origin};
  g.validate();
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "numerical toolkit for sparse domination of commutators";

  py::register_exception<AlignmentError>(m, "AlignmentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Grid>(m, "Grid")
      .def(py::init(&make_grid), py::arg("dim"), py::arg("cells"), py::arg("h"),
           py::arg("origin") = 0.0)
      .def_readonly("dim", &Grid::dim)
      .def_readonly("h", &Grid::h)
      .def_property_readonly("cells", [](const Grid& g) { return g.cells; })
      .def_property_readonly("origin", [](const Grid& g) { return g.origin; })
      .def("cell_count", &Grid::cell_count);

  py::class_<GridFunction>(m, "GridFunction")
      .def(py::init<const Grid&, double>(), py::arg("grid"), py::arg("fill") = 0.0)
      .def_readonly("grid", &GridFunction::grid)
      .def_property(
          "values", [](const GridFunction& f) { return f.values; },
          [](GridFunction& f, std::vector<double> v) {
            if (v.size() != f.values.size()) throw DataError("value count mismatch");
            f.values = std::move(v);
          })
      .def("to_text", [](const GridFunction& f) { return to_text(f); })
      .def("to_json", [](const GridFunction& f) { return to_json(f); })
      .def_static("from_text", &grid_function_from_text)
      .def_static("from_json", &grid_function_from_json);

  m.def("generate_function",
        [](const Grid& g, const std::string& spec, std::uint64_t seed) {
          Lcg rng(seed);
          return generate_function(g, spec, rng);
        },
        py::arg("grid"), py::arg("spec"), py::arg("seed"));

  m.def("hl_maximal", &hl_maximal);
  m.def("orlicz_maximal",
        [](const GridFunction& f, const std::string& phi) {
          return orlicz_maximal(f, *make_young(phi), MaximalMode::AllCubes);
        },
        py::arg("f"), py::arg("phi"));
  m.def("luxemburg_norm",
        [](const GridFunction& f, long ix, long iy, long side, const std::string& phi) {
          return luxemburg_norm(f, CellBox{{ix, iy}, side}, *make_young(phi));
        },
        py::arg("f"), py::arg("ix"), py::arg("iy"), py::arg("side"), py::arg("phi"));
  m.def("tail_constant",
        [](const std::string& phi) {
          TailIntegral t = c_phi(*make_young(phi));
          return py::make_tuple(t.converged, t.value);
        },
        py::arg("phi"), "the improper integral constant of a Young function");

  m.def("apply_T",
        [](const std::string& kernel, const GridFunction& f) {
          return apply_T(*make_kernel(kernel, f.grid), f);
        },
        py::arg("kernel"), py::arg("f"));
  m.def("commutator",
        [](const std::string& kernel, const GridFunction& b, const GridFunction& f) {
          return commutator(*make_kernel(kernel, f.grid), b, f);
        },
        py::arg("kernel"), py::arg("b"), py::arg("f"));

  m.def("ap_constant",
        [](const GridFunction& w, double p) { return ap_constant(w, p, all_cellboxes(w.grid)); },
        py::arg("w"), py::arg("p"));
  m.def("a1_constant", &a1_constant);
  m.def("bmo_norm",
        [](const GridFunction& b) { return bmo_norm(b, all_cellboxes(b.grid)); });

  m.def("dominate",
        [](const std::string& kernel, const GridFunction& b, const GridFunction& f) {
          DominationResult r = build_commutator_domination(*make_kernel(kernel, f.grid), b, f);
          return r.to_json();
        },
        py::arg("kernel"), py::arg("b"), py::arg("f"),
        "sparse domination certificate of the commutator, as JSON");

  m.def("verify_family",
        [](const std::string& text, double eta) {
          SparseFamily s = SparseFamily::from_text(text);
          return verify_sparse(s, eta).success;
        },
        py::arg("family_text"), py::arg("eta"));

  m.def("run_scenario",
        [](const std::string& path) {
          ScenarioResult r = run_scenario(Scenario::load(path));
          return py::make_tuple(r.exit_code, r.json, r.csv);
        },
        py::arg("path"));
}
